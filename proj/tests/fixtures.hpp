#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "levelplan/model.hpp"

namespace fx {

using levelplan::ConstrainedLevelGraph;
using levelplan::OrderedLevelGraph;

struct V {
    std::string id;
    int level;
    int rank = 0;
};
using Pair = std::pair<std::string, std::string>;

inline levelplan::LevelGraph graph(std::initializer_list<V> vs, std::initializer_list<Pair> es) {
    levelplan::LevelGraph g;
    for (auto& v : vs) g.add_vertex(v.id, v.level);
    for (auto& [a, b] : es) g.add_edge(g.index_of(a), g.index_of(b));
    return g;
}

inline ConstrainedLevelGraph clg(std::initializer_list<V> vs, std::initializer_list<Pair> es,
                                 std::initializer_list<Pair> cs = {}) {
    ConstrainedLevelGraph c;
    c.graph = graph(vs, es);
    for (auto& [a, b] : cs) c.add_constraint(c.graph.index_of(a), c.graph.index_of(b));
    return c;
}

inline OrderedLevelGraph olg(std::initializer_list<V> vs, std::initializer_list<Pair> es) {
    OrderedLevelGraph o;
    o.graph = graph(vs, es);
    for (auto& v : vs) o.rank.push_back(v.rank);
    return o;
}

// vertex ids of one level in embedding order
inline std::vector<std::string> ids(const levelplan::LevelGraph& g, const levelplan::LevelEmbedding& e, int level) {
    std::vector<std::string> out;
    for (int v : e.vertex_order(level)) out.push_back(g.id(v));
    return out;
}

}  // namespace fx
