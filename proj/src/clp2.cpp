#include "levelplan/clp2.hpp"

#include <algorithm>

namespace levelplan::clp2 {

std::optional<Caterpillar> caterpillar(const LevelGraph& g, const std::vector<int>& vertices) {
    std::size_t edges = 0;
    for (int v : vertices) edges += g.neighbors(v).size();
    edges /= 2;
    if (edges + 1 != vertices.size()) return std::nullopt;  // connected, so a tree iff |E| = |V|-1
    Caterpillar cat;
    std::vector<int> in_spine;
    for (int v : vertices)
        if (g.degree(v) >= 2) in_spine.push_back(v);
    if (in_spine.empty()) return cat;
    auto is_spine = [&](int v) { return g.degree(v) >= 2; };
    int start = -1;
    for (int v : in_spine) {
        int k = 0;
        for (int w : g.neighbors(v)) k += is_spine(w);
        if (k > 2) return std::nullopt;
        if (k <= 1 && (start < 0 || g.id(v) < g.id(start))) start = v;
    }
    if (start < 0) return std::nullopt;
    int prev = -1, cur = start;
    while (cur >= 0) {
        cat.spine.push_back(cur);
        int next = -1;
        for (int w : g.neighbors(cur))
            if (is_spine(w) && w != prev) next = w;
        prev = cur;
        cur = next;
    }
    if (cat.spine.size() != in_spine.size()) return std::nullopt;
    // orient so the smaller end id comes first
    if (g.id(cat.spine.back()) < g.id(cat.spine.front())) std::reverse(cat.spine.begin(), cat.spine.end());
    for (int v : cat.spine) {
        cat.leaves.emplace_back();
        for (int w : g.neighbors(v))
            if (!is_spine(w)) cat.leaves.back().push_back(w);
    }
    return cat;
}

std::optional<LevelOrders> sort_levels(const ConstrainedLevelGraph& g, const std::vector<Constraint>& extra) {
    const auto& G = g.graph;
    auto lv = G.by_level();
    std::vector<int> local(G.size());
    LevelOrders out(G.height);
    std::vector<std::vector<std::pair<int, int>>> arcs(G.height);
    for (int l = 0; l < G.height; ++l)
        for (std::size_t k = 0; k < lv[l].size(); ++k) local[lv[l][k]] = static_cast<int>(k);
    auto add = [&](Constraint c) { arcs[G.level(c.before) - 1].push_back({local[c.before], local[c.after]}); };
    for (auto c : g.constraints) add(c);
    for (auto c : extra) add(c);
    for (int l = 0; l < G.height; ++l) {
        std::vector<std::string> keys;
        for (int v : lv[l]) keys.push_back(G.id(v));
        auto o = topo_sort(static_cast<int>(lv[l].size()), arcs[l], keys);
        if (!o) return std::nullopt;
        for (int k : *o) out[l].push_back(lv[l][k]);
    }
    return out;
}

LevelEmbedding from_orders(const LevelOrders& orders) {
    LevelEmbedding emb;
    emb.levels.resize(orders.size());
    for (std::size_t l = 0; l < orders.size(); ++l)
        for (int v : orders[l]) emb.levels[l].push_back({Item::vertex, v});
    return emb;
}

std::optional<LevelOrders> solve_component(const ConstrainedLevelGraph& c) {
    const auto& G = c.graph;
    std::vector<int> all(G.size());
    for (int v = 0; v < static_cast<int>(G.size()); ++v) all[v] = v;
    auto cat = caterpillar(G, all);
    if (!cat) return std::nullopt;
    if (cat->spine.empty()) return sort_levels(c);
    for (int attempt = 0; attempt < 2; ++attempt) {
        auto spine = cat->spine;
        auto leaves = cat->leaves;
        if (attempt == 1) {
            if (spine.size() == 1) break;
            std::reverse(spine.begin(), spine.end());
            std::reverse(leaves.begin(), leaves.end());
        }
        int k = static_cast<int>(spine.size());
        std::vector<Constraint> extra;
        for (int i = 0; i + 2 < k; ++i) extra.push_back({spine[i], spine[i + 2]});
        for (int i = 0; i < k; ++i)
            for (int u : leaves[i]) {
                if (i > 0) extra.push_back({spine[i - 1], u});
                if (i + 1 < k) extra.push_back({u, spine[i + 1]});
            }
        if (auto o = sort_levels(c, extra)) return o;
    }
    return std::nullopt;
}

std::optional<LevelEmbedding> solve(const ConstrainedLevelGraph& g) {
    if (g.graph.height > 2) throw Error(ErrorKind::UnsupportedHeight, "2-level solver called on a taller instance");
    // also catches cycles through isolated vertices, which stripping would hide
    auto sorted = sort_levels(g);
    if (!sorted) return std::nullopt;
    if (g.graph.edge_count() == 0) return from_orders(*sorted);
    auto st = strip_isolated(g);
    auto comps = components(st.instance);
    int q = static_cast<int>(comps.members.size());
    std::vector<LevelOrders> parts;
    for (auto& p : comps.parts) {
        auto o = solve_component(p.instance);
        if (!o) return std::nullopt;
        parts.push_back(std::move(*o));
    }
    std::vector<std::pair<int, int>> arcs;
    for (auto c : comps.cross) arcs.push_back({comps.comp_of[c.before], comps.comp_of[c.after]});
    std::vector<std::string> keys;
    for (auto& m : comps.members) keys.push_back(st.instance.graph.id(m.front()));
    auto order = topo_sort(q, arcs, keys);
    if (!order) return std::nullopt;
    LevelOrders all(g.graph.height);
    for (int ci : *order)
        for (int l = 0; l < g.graph.height; ++l)
            for (int v : parts[ci][l]) all[l].push_back(comps.parts[ci].to_parent[v]);
    return reinsert_isolated(g, st, from_orders(all));
}

}  // namespace levelplan::clp2
