#pragma once

#include <string>

#include <json.hpp>

#include "levelplan/model.hpp"

namespace levelplan {

using json = nlohmann::json;

/// Type-checks a parsed instance. OLP iff every vertex carries a rank.
Instance validate_instance(const json& raw, bool strict_levels = false);

json to_json(const ConstrainedLevelGraph& g);
json to_json(const OrderedLevelGraph& g);
json to_json(const Instance& inst);

json embedding_to_json(const LevelGraph& g, const LevelEmbedding& emb, bool with_coordinates = false);
LevelEmbedding embedding_from_json(const LevelGraph& g, const json& raw);

std::string to_svg(const LevelGraph& g, const LevelEmbedding& emb);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

inline const LevelGraph& graph_of(const Instance& inst) {
    return std::visit([](const auto& x) -> const LevelGraph& { return x.graph; }, inst);
}

}  // namespace levelplan
