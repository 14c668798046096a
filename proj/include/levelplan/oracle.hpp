#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "levelplan/model.hpp"

namespace levelplan {

struct Violation {
    enum Kind { ConstraintViolated, EdgeCrossing, RankMismatch, StructureMismatch } kind;
    std::string detail;
};

const char* violation_name(Violation::Kind k);

std::vector<Violation> verify_drawing(const ConstrainedLevelGraph& g, const LevelEmbedding& emb);
std::vector<Violation> verify_drawing(const OrderedLevelGraph& g, const LevelEmbedding& emb);

struct OracleLimits {
    std::uint64_t max_nodes = 10'000'000;  // search-tree nodes before SearchSpaceExceeded
};

/// Exhaustive search over per-level linear extensions; nullopt means infeasible.
std::optional<LevelEmbedding> brute_clp(const ConstrainedLevelGraph& g, OracleLimits limits = {});

/// Ranked vertices stay fixed; only subdivision vertices move.
std::optional<LevelEmbedding> brute_olp(const OrderedLevelGraph& g, OracleLimits limits = {});

}  // namespace levelplan
