#pragma once

#include <array>
#include <string>
#include <vector>

#include "levelplan/model.hpp"

namespace levelplan::hardness {

// ---- plugs and sockets ----

/// Levels (l1,l2,l3,l4) of a plug; requires l1 <= l2 < l3 <= l4.
struct PlugSpec {
    std::array<int, 4> level{};
    bool degenerate() const { return level[0] == level[1] || level[2] == level[3]; }
    void check() const;  // throws ParameterInvalid
};

/// Levels (l1,l2,l3,l4) of a socket; requires l1 < l2 <= l3 < l4.
struct SocketSpec {
    std::array<int, 4> level{};
    bool degenerate() const { return level[1] == level[2]; }
    void check() const;
};

/// Vertex/edge template of a gadget after contracting same-level edges.
/// name[i] is the original index (u_k / v_k), so contracted vertices are absent.
struct GadgetTemplate {
    std::vector<int> name;
    std::vector<int> level;
    std::vector<std::pair<int, int>> edges;  // template positions, lower level first
    int connect_low = -1;   // plug: u5, socket: v1 (template positions)
    int connect_high = -1;  // plug: u1, socket: v9
    int find(int name_index) const;  // -1 if contracted away
};

GadgetTemplate plug_template(const PlugSpec& p);
GadgetTemplate socket_template(const SocketSpec& s);

/// extent_min/extent_max: lowest and highest level of the plug's component.
bool fits(const PlugSpec& p, const SocketSpec& s, int extent_min, int extent_max);
bool fits(const PlugSpec& p, const SocketSpec& s);  // component = the plug alone

bool double_link_admissible(const PlugSpec& a, const PlugSpec& b, const SocketSpec& s);
bool double_link_admissible(const PlugSpec& a, int a_min, int a_max, const PlugSpec& b, int b_min, int b_max,
                            const SocketSpec& s);

/// Adds the gadget's vertices (ids prefix + "u<k>" / "v<k>") and edges to g.
/// Returns the vertex index per template position.
std::vector<int> add_plug(LevelGraph& g, const PlugSpec& p, const std::string& prefix);
std::vector<int> add_socket(LevelGraph& g, const SocketSpec& s, const std::string& prefix);

// ---- 3-Partition -> 4-level CLP ----

struct ClipInfo {
    int size = 0;
    std::vector<int> upper;   // level-2 vertices p_0..p_2k, left to right
    std::vector<int> top;     // level-3 vertices
    std::vector<int> bottom;  // level-1 vertices
    int center = -1;          // level-4 vertex
};

struct MountainChainInfo {
    std::vector<std::array<int, 3>> mountains;  // (left level-2, peak, right level-2)
    std::vector<int> floor;                     // level-1 vertices, walls included at both ends
};

struct PartitionReduction {
    std::vector<int> numbers;
    int m = 0;
    int bucket = 0;  // B
    ConstrainedLevelGraph instance;
    std::vector<ClipInfo> clips;  // one per number, same order
    std::vector<MountainChainInfo> chains;
    std::vector<std::array<int, 4>> walls;  // wall i, levels 1..4
};

struct PartitionLimits {
    long long max_total = 200000;  // cap on m*B, the instance is Theta(m*B)
};

PartitionReduction gen_3partition(const std::vector<int>& numbers, int m, int bucket, PartitionLimits limits = {});

/// triples: indices into numbers, each summing to B, covering every number once.
LevelEmbedding realize_3partition_witness(const PartitionReduction& r, const std::vector<std::vector<int>>& triples);

// ---- Multicolored Independent Set -> OLP ----

struct McisInput {
    std::vector<std::string> vertices;
    std::vector<int> color;  // 1..k
    std::vector<std::pair<int, int>> edges;
    int k = 0;
};

struct Band {
    enum Kind { Color, Collision } kind;
    int index = 0;        // j of the color-j / collision-j band
    int first_level = 0;  // global level of relative level 1
    std::string layout;   // one letter per level
};

struct GridLayout {
    int k = 0;
    int n_prime = 0;  // vertices per color after padding
    int m = 0;        // edges after padding
    std::vector<int> m_color;  // m_j, index j-1
    std::vector<Band> bands;   // bottom to top
    int height = 0;
    int walls = 0;
    int columns = 0;

    // padded graph
    std::vector<std::string> vertices;  // input vertices first, then "pad<j>_<i>"
    std::vector<int> color;
    std::vector<int> idx;  // 1-based index within the color class
    std::vector<std::pair<int, int>> edges;  // lower color first

    int block_first_column(int block) const { return n_prime - 1 + block * (2 * n_prime - 1) + 1; }
    int color_band_level(int j, int rel) const;      // global level
    int collision_band_level(int j, int rel) const;
};

struct GadgetCounts {
    int high_plugs = 0;
    int color_plugs = 0;
    int choice_sockets = 0;
    int color_sockets = 0;
    int pass_sockets = 0;
};

struct McisReduction {
    McisInput input;
    GridLayout layout;
    OrderedLevelGraph instance;
    std::vector<GadgetCounts> per_color;  // index j-1
    std::vector<int> scaffold;            // walls, sockets and their subdivisions
};

McisReduction gen_mcis(const McisInput& in);

/// chosen: input vertex indices, one per color, pairwise non-adjacent.
LevelEmbedding realize_mcis_witness(const McisReduction& r, const std::vector<int>& chosen);

}  // namespace levelplan::hardness
