#include "levelplan/random.hpp"

#include <algorithm>

namespace levelplan {

LevelGraph random_level_graph(std::mt19937_64& rng, const RandomSpec& spec) {
    int h = spec.height;
    int n_max = std::max(h, std::min(spec.max_vertices, h * spec.max_width));
    std::uniform_int_distribution<int> nd(h, n_max);
    int n = nd(rng);
    std::vector<int> width(h, 1);
    for (int extra = n - h; extra > 0;) {
        int l = std::uniform_int_distribution<int>(0, h - 1)(rng);
        if (width[l] < spec.max_width) {
            ++width[l];
            --extra;
        }
    }
    LevelGraph g;
    for (int l = 1; l <= h; ++l)
        for (int k = 1; k <= width[l - 1]; ++k) g.add_vertex("v" + std::to_string(l) + "_" + std::to_string(k), l);
    g.height = h;
    std::bernoulli_distribution take(spec.edge_density);
    std::bernoulli_distribution take_long(spec.edge_density * spec.long_edge_share);
    for (int u = 0; u < static_cast<int>(g.size()); ++u)
        for (int v = 0; v < static_cast<int>(g.size()); ++v) {
            int d = g.level(v) - g.level(u);
            if (d <= 0) continue;
            if (d == 1 ? take(rng) : take_long(rng)) g.add_edge(u, v);
        }
    return g;
}

OrderedLevelGraph random_olp(std::mt19937_64& rng, const RandomSpec& spec) {
    OrderedLevelGraph o;
    o.graph = random_level_graph(rng, spec);
    o.rank.assign(o.graph.size(), 0);
    for (auto& lv : o.graph.by_level()) {
        std::vector<int> r(lv.size());
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = static_cast<int>(k) + 1;
        std::shuffle(r.begin(), r.end(), rng);
        for (std::size_t k = 0; k < lv.size(); ++k) o.rank[lv[k]] = r[k];
    }
    return o;
}

ConstrainedLevelGraph random_clp(std::mt19937_64& rng, const RandomSpec& spec) {
    ConstrainedLevelGraph c;
    c.graph = random_level_graph(rng, spec);
    std::bernoulli_distribution take(spec.constraint_density);
    // constraints follow a hidden random order most of the time, so many instances stay acyclic
    std::bernoulli_distribution consistent(0.9);
    for (auto& lv : c.graph.by_level()) {
        auto hidden = lv;
        std::shuffle(hidden.begin(), hidden.end(), rng);
        for (std::size_t a = 0; a < hidden.size(); ++a)
            for (std::size_t b = a + 1; b < hidden.size(); ++b)
                if (take(rng)) {
                    if (consistent(rng))
                        c.constraints.push_back({hidden[a], hidden[b]});
                    else
                        c.constraints.push_back({hidden[b], hidden[a]});
                }
    }
    return c;
}

ConstrainedLevelGraph random_forest_clp(std::mt19937_64& rng, const ForestSpec& spec) {
    ConstrainedLevelGraph c;
    auto& g = c.graph;
    g.height = spec.height;
    std::uniform_int_distribution<int> lvl(1, spec.height);
    std::uniform_int_distribution<int> size(2, std::max(2, spec.max_tree));
    std::bernoulli_distribution extra(spec.extra_edge);
    for (int t = 0; t < spec.trees; ++t) {
        std::vector<int> vs;
        int k = size(rng);
        auto name = [&] { return "t" + std::to_string(t) + "_" + std::to_string(vs.size()); };
        vs.push_back(g.add_vertex(name(), lvl(rng)));
        while (static_cast<int>(vs.size()) < k) {
            int p = vs[std::uniform_int_distribution<std::size_t>(0, vs.size() - 1)(rng)];
            int l = lvl(rng);
            if (l == g.level(p)) continue;
            int v = g.add_vertex(name(), l);
            g.level(p) < l ? g.add_edge(p, v) : g.add_edge(v, p);
            vs.push_back(v);
        }
        for (int a : vs)
            for (int b : vs)
                if (g.level(a) < g.level(b) && g.find_edge(a, b) < 0 && extra(rng)) g.add_edge(a, b);
    }
    auto levels = g.by_level();
    for (int l = 1; l <= spec.height; ++l)
        if (levels[l - 1].empty()) g.add_vertex("e" + std::to_string(l), l);
    int n = static_cast<int>(g.size());
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int added = 0, tries = 0; added < spec.constraints && tries < 50 * (spec.constraints + 1); ++tries) {
        int a = pick(rng), b = pick(rng);
        if (a == b || g.level(a) != g.level(b)) continue;
        c.constraints.push_back({a, b});
        ++added;
    }
    return c;
}

}  // namespace levelplan
