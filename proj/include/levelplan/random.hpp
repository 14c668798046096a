#pragma once

#include <cstdint>
#include <random>

#include "levelplan/model.hpp"

namespace levelplan {

struct RandomSpec {
    int height = 3;
    int max_vertices = 8;
    int max_width = 3;
    double edge_density = 0.4;        // probability per candidate pair
    double long_edge_share = 0.3;     // candidate pairs spanning more than one level are kept with this factor
    double constraint_density = 0.3;  // probability per same-level ordered pair (CLP only)
};

/// Every level gets at least one vertex; ids are "v<level>_<k>".
LevelGraph random_level_graph(std::mt19937_64& rng, const RandomSpec& spec);
OrderedLevelGraph random_olp(std::mt19937_64& rng, const RandomSpec& spec);
ConstrainedLevelGraph random_clp(std::mt19937_64& rng, const RandomSpec& spec);

struct ForestSpec {
    int height = 3;
    int trees = 3;
    int max_tree = 5;          // vertices per tree, at least 2
    int constraints = 5;       // random same-level pairs, mostly across trees
    double extra_edge = 0.15;  // chance per upward pair inside a tree to add a cycle-closing edge
};

/// A few small random trees tied together only by constraints; ids are "t<tree>_<k>".
/// Empty levels get an isolated vertex.
ConstrainedLevelGraph random_forest_clp(std::mt19937_64& rng, const ForestSpec& spec);

}  // namespace levelplan
