#pragma once

#include <optional>
#include <vector>

#include "levelplan/model.hpp"

namespace levelplan::clp2 {

struct Caterpillar {
    std::vector<int> spine;               // degree >= 2 vertices in path order
    std::vector<std::vector<int>> leaves;  // leaves[i] hang off spine[i]
};

/// Spine of a connected graph, or nullopt if it is not a caterpillar.
/// A single vertex or a single edge yields an empty spine.
std::optional<Caterpillar> caterpillar(const LevelGraph& g, const std::vector<int>& vertices);

/// Per-level vertex orders (index 0 = level 1), or nullopt.
using LevelOrders = std::vector<std::vector<int>>;

std::optional<LevelOrders> solve_component(const ConstrainedLevelGraph& c);

std::optional<LevelEmbedding> solve(const ConstrainedLevelGraph& g);

/// Per-level topological sort of the constraints, smallest id first.
std::optional<LevelOrders> sort_levels(const ConstrainedLevelGraph& g,
                                       const std::vector<Constraint>& extra = {});

LevelEmbedding from_orders(const LevelOrders& orders);

}  // namespace levelplan::clp2
