#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace levelplan {

enum class ErrorKind {
    UnknownVertex,
    EdgeNotUpward,
    SameLevelEdge,
    DuplicateRank,
    ConstraintAcrossLevels,
    EmptyLevel,
    MalformedInput,
    OrderCycle,
    SequenceInvalid,
    SearchSpaceExceeded,
    ResourceLimit,
    ParameterInvalid,
    WitnessInvalid,
    UnsupportedHeight,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct Edge {
    int u;
    int v;  // level(u) < level(v)
};

/// Directed level graph; vertex ids are opaque strings, levels are 1-based.
class LevelGraph {
public:
    int height = 0;

    int add_vertex(const std::string& id, int level);
    int add_edge(int u, int v);

    std::size_t size() const { return ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& id(int v) const { return ids_[v]; }
    int level(int v) const { return level_[v]; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    const std::vector<int>& incident(int v) const { return inc_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    int find(const std::string& id) const;   // -1 if absent
    int index_of(const std::string& id) const;  // throws UnknownVertex
    int find_edge(int u, int v) const;       // either direction, -1 if absent

    // vertices of each level, index 0 is level 1, in insertion order
    std::vector<std::vector<int>> by_level() const;
    int span(int e) const { return level_[edges_[e].v] - level_[edges_[e].u]; }

private:
    std::vector<std::string> ids_;
    std::vector<int> level_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> inc_;
    std::unordered_map<std::string, int> index_;
    std::unordered_map<std::uint64_t, int> edge_index_;
};

struct Constraint {
    int before;
    int after;
    bool operator==(const Constraint& o) const { return before == o.before && after == o.after; }
    bool operator<(const Constraint& o) const {
        return before != o.before ? before < o.before : after < o.after;
    }
};

struct ConstrainedLevelGraph {
    LevelGraph graph;
    std::vector<Constraint> constraints;  // each pair on one level

    void add_constraint(int before, int after);
    // constraints restricted to one level
    std::vector<Constraint> on_level(int level) const;
};

struct OrderedLevelGraph {
    LevelGraph graph;
    std::vector<int> rank;  // 1-based rank within the vertex's level

    // vertices of each level sorted by rank
    std::vector<std::vector<int>> orders() const;
};

using Instance = std::variant<ConstrainedLevelGraph, OrderedLevelGraph>;

struct Item {
    enum Kind : std::uint8_t { vertex, edge } kind;
    int id;  // vertex index or edge index
    bool operator==(const Item& o) const { return kind == o.kind && id == o.id; }
};

/// Per-level left-to-right sequences; levels[i] is level i+1.
struct LevelEmbedding {
    std::vector<std::vector<Item>> levels;

    // vertex-only order of a level
    std::vector<int> vertex_order(int level) const;
};

struct Point {
    double x;
    int y;
};

struct Coordinates {
    std::vector<Point> vertex;                 // by vertex index
    std::vector<std::vector<Point>> polyline;  // by edge index
};

/// x = position index in the level sequence, y = level.
Coordinates synthesize_coordinates(const LevelGraph& g, const LevelEmbedding& emb);

/// Subdivision provenance: chain[e] lists the inserted vertices of original edge e, bottom to top.
struct SubdivisionMap {
    std::vector<std::vector<int>> chain;
    std::vector<int> owner;  // per vertex of the proper graph: original edge index or -1

    bool empty() const;
};

struct ProperResult {
    ConstrainedLevelGraph proper;
    SubdivisionMap map;
};

ProperResult make_proper(const ConstrainedLevelGraph& g);

/// Maps an embedding of the proper graph back onto the original graph.
LevelEmbedding unsubdivide(const ConstrainedLevelGraph& original, const SubdivisionMap& map,
                           const LevelEmbedding& proper_emb);

struct Stripped {
    ConstrainedLevelGraph instance;  // induced by the non-isolated vertices, closed constraints
    std::vector<int> kept;           // new index -> original index
    std::vector<int> removed;        // original indices of isolated vertices
};

Stripped strip_isolated(const ConstrainedLevelGraph& g);

LevelEmbedding reinsert_isolated(const ConstrainedLevelGraph& g, const Stripped& s,
                                 const LevelEmbedding& emb);

struct SubInstance {
    ConstrainedLevelGraph instance;
    std::vector<int> to_parent;  // local index -> parent index
    std::vector<int> to_parent_edge;
};

SubInstance induced(const ConstrainedLevelGraph& g, const std::vector<int>& vertices);

struct Components {
    std::vector<int> comp_of;
    std::vector<std::vector<int>> members;
    std::vector<Constraint> cross;  // constraints joining two components
    std::vector<SubInstance> parts;
};

Components components(const ConstrainedLevelGraph& g);

/// Per-level transitive closure of the constraints (dense). reach[u] lists all w with u < w.
std::vector<std::vector<int>> transitive_successors(const ConstrainedLevelGraph& g);

/// Kahn's algorithm over nodes 0..n-1 picking the smallest key first; nullopt on a cycle.
std::optional<std::vector<int>> topo_sort(int n, const std::vector<std::pair<int, int>>& arcs,
                                          const std::vector<std::string>& keys);

OrderedLevelGraph compact_levels(const OrderedLevelGraph& g);
ConstrainedLevelGraph compact_levels(const ConstrainedLevelGraph& g);

ConstrainedLevelGraph as_constrained(const OrderedLevelGraph& g);

}  // namespace levelplan
