#pragma once

#include <optional>
#include <vector>

#include "levelplan/model.hpp"

namespace levelplan {

/// Per-level order relation kept closed under two rules:
///   transitivity  a < b, b < c  =>  a < c
///   planarity     edges ab, cd, a < c  =>  b < d  (unless b = d)
/// Holds its own adjacency so edges may be added or dropped later; dropping an
/// edge never retracts pairs derived through it.
class ClosedConstraints {
public:
    ClosedConstraints() = default;
    explicit ClosedConstraints(const LevelGraph& g);

    int add_vertex(int level);
    bool add_edge(int u, int v);
    void remove_edge(int u, int v);
    // detaches v from all edges; its pairs stay in the relation
    void isolate(int v);

    // false once some level became cyclic; the object is then poisoned
    bool add(int before, int after);
    bool ok() const { return ok_; }

    bool less(int a, int b) const { return lt_[a][b] != 0; }
    bool comparable(int a, int b) const { return a == b || lt_[a][b] || lt_[b][a]; }

    int size() const { return static_cast<int>(level_.size()); }
    int level(int v) const { return level_[v]; }
    int height() const { return static_cast<int>(by_level_.size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    // every vertex ever created on level l, dead ones included
    const std::vector<int>& on_level(int l) const;
    bool adjacent(int u, int v) const;

    std::vector<Constraint> pairs() const;
    std::size_t pair_count() const;

private:
    bool push(int a, int b);
    bool drain();

    std::vector<int> level_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> by_level_;
    std::vector<std::vector<char>> lt_;
    std::vector<std::pair<int, int>> queue_;
    bool ok_ = true;
};

/// Least fixpoint of both rules over the input constraints; nullopt on a cycle.
std::optional<ClosedConstraints> close_constraints(const ConstrainedLevelGraph& g);

/// Copy of g whose constraint list is every pair of c.
ConstrainedLevelGraph with_closure(const ConstrainedLevelGraph& g, const ClosedConstraints& c);

}  // namespace levelplan
