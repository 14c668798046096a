#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "levelplan/model.hpp"

namespace levelplan::olp {

using Separation = std::vector<int>;  // p_1..p_h, index 0 is level 1

/// Edge set among on-separation vertices, keyed by level pair; bottom marks the dead state.
struct UsedEdgeSet {
    bool bottom = false;
    std::vector<std::uint64_t> bits;  // h*h bit matrix, only a<b used

    static UsedEdgeSet empty(int h);
    static UsedEdgeSet make_bottom() { return {true, {}}; }
    bool has(int h, int a, int b) const;  // levels 1-based, a != b
    void set(int h, int a, int b, bool on);
    bool none() const;
    bool operator==(const UsedEdgeSet& o) const { return bottom == o.bottom && bits == o.bits; }
};

enum class Side { OnSeparation, LeftOf, RightOf };

struct SweepingSequence {
    std::vector<Separation> steps;
    bool nice = false;
    bool exhaustive = false;
};

struct Stats {
    std::size_t memo_entries = 0;
    std::size_t true_entries = 0;
};

struct Limits {
    std::size_t memo_limit = 0;  // 0 = unlimited
    static Limits from_env();    // LEVELPLAN_MEMO_LIMIT
};

/// Precomputed per-level orders for one ordered level graph.
class Solver {
public:
    explicit Solver(const OrderedLevelGraph& g, Limits limits = {});

    Side classify(int v, const Separation& s) const;
    bool uses_edge(const Separation& s, int e) const;
    std::pair<Separation, UsedEdgeSet> step_back(const Separation& s, const UsedEdgeSet& U, int j) const;

    std::optional<SweepingSequence> solve();
    const Stats& stats() const { return stats_; }

    // vertex at odd position p on level l (1-based), or -1
    int vertex_at(int l, int p) const;
    int width(int l) const { return static_cast<int>(order_[l - 1].size()); }

private:
    // on-separation vertices of s adjacent along s to the vertex on level l
    int pred_along(const Separation& s, int l) const;
    int succ_along(const Separation& s, int l) const;

    const OrderedLevelGraph& g_;
    Limits limits_;
    int h_;
    std::vector<std::vector<int>> order_;
    Stats stats_;
};

std::optional<SweepingSequence> solve(const OrderedLevelGraph& g, Limits limits = {}, Stats* stats = nullptr);

/// Builds the drawing certified by a sweeping sequence that uses every edge.
LevelEmbedding realize(const OrderedLevelGraph& g, SweepingSequence seq);

std::optional<LevelEmbedding> solve_and_draw(const OrderedLevelGraph& g, Limits limits = {});

}  // namespace levelplan::olp
