#include "levelplan/oracle.hpp"

#include <algorithm>
#include <map>

namespace levelplan {

const char* violation_name(Violation::Kind k) {
    switch (k) {
        case Violation::ConstraintViolated: return "ConstraintViolated";
        case Violation::EdgeCrossing: return "EdgeCrossing";
        case Violation::RankMismatch: return "RankMismatch";
        case Violation::StructureMismatch: return "StructureMismatch";
    }
    return "?";
}

namespace {

// Structure + crossings. Fills pos (vertex position per level) as a side effect.
std::vector<Violation> check_structure(const LevelGraph& g, const LevelEmbedding& emb, std::vector<int>& vpos) {
    std::vector<Violation> out;
    int n = static_cast<int>(g.size()), m = static_cast<int>(g.edge_count());
    if (static_cast<int>(emb.levels.size()) != g.height) {
        out.push_back({Violation::StructureMismatch, "embedding has " + std::to_string(emb.levels.size()) +
                                                         " levels, instance has " + std::to_string(g.height)});
        return out;
    }
    vpos.assign(n, -1);
    // marker position per (edge, level)
    std::vector<std::map<int, int>> mpos(m);
    for (int i = 0; i < g.height; ++i) {
        int l = i + 1;
        for (int x = 0; x < static_cast<int>(emb.levels[i].size()); ++x) {
            auto it = emb.levels[i][x];
            if (it.kind == Item::vertex) {
                if (it.id < 0 || it.id >= n || g.level(it.id) != l || vpos[it.id] >= 0) {
                    out.push_back({Violation::StructureMismatch, "bad vertex entry on level " + std::to_string(l)});
                    continue;
                }
                vpos[it.id] = x;
            } else {
                if (it.id < 0 || it.id >= m) {
                    out.push_back({Violation::StructureMismatch, "bad edge entry on level " + std::to_string(l)});
                    continue;
                }
                auto e = g.edge(it.id);
                if (!(g.level(e.u) < l && l < g.level(e.v)) || mpos[it.id].count(l)) {
                    out.push_back({Violation::StructureMismatch,
                                   "edge " + g.id(e.u) + "-" + g.id(e.v) + " misplaced on level " + std::to_string(l)});
                    continue;
                }
                mpos[it.id][l] = x;
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (vpos[v] < 0) out.push_back({Violation::StructureMismatch, "vertex " + g.id(v) + " missing"});
    for (int e = 0; e < m; ++e)
        if (static_cast<int>(mpos[e].size()) != g.span(e) - 1)
            out.push_back({Violation::StructureMismatch,
                           "edge " + g.id(g.edge(e).u) + "-" + g.id(g.edge(e).v) + " has missing markers"});
    if (!out.empty()) return out;

    auto at = [&](int e, int l) {
        auto [u, v] = g.edge(e);
        if (g.level(u) == l) return vpos[u];
        if (g.level(v) == l) return vpos[v];
        return mpos[e].at(l);
    };
    // band l..l+1: sort segments by lower position, look for a strictly smaller upper position later on
    std::vector<std::vector<int>> band(std::max(0, g.height - 1));
    for (int e = 0; e < m; ++e)
        for (int l = g.level(g.edge(e).u); l < g.level(g.edge(e).v); ++l) band[l - 1].push_back(e);
    for (int l = 1; l < g.height; ++l) {
        auto& seg = band[l - 1];
        std::vector<std::pair<int, int>> ps;
        for (int e : seg) ps.push_back({at(e, l), at(e, l + 1)});
        std::vector<int> idx(seg.size());
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return ps[a] < ps[b]; });
        int best = -1;  // segment with maximal upper position among strictly-lower groups
        std::size_t k = 0;
        while (k < idx.size()) {
            std::size_t j = k;
            while (j < idx.size() && ps[idx[j]].first == ps[idx[k]].first) ++j;
            if (best >= 0)
                for (std::size_t q = k; q < j; ++q)
                    if (ps[idx[q]].second < ps[best].second) {
                        auto a = g.edge(seg[best]), b = g.edge(seg[idx[q]]);
                        out.push_back({Violation::EdgeCrossing, g.id(a.u) + "-" + g.id(a.v) + " x " + g.id(b.u) +
                                                                    "-" + g.id(b.v) + " in band " + std::to_string(l)});
                        break;
                    }
            for (std::size_t q = k; q < j; ++q)
                if (best < 0 || ps[idx[q]].second > ps[best].second) best = idx[q];
            k = j;
        }
    }
    return out;
}

}  // namespace

std::vector<Violation> verify_drawing(const ConstrainedLevelGraph& g, const LevelEmbedding& emb) {
    std::vector<int> pos;
    auto out = check_structure(g.graph, emb, pos);
    if (!pos.empty() && std::none_of(out.begin(), out.end(), [](auto& v) { return v.kind == Violation::StructureMismatch; }))
        for (auto c : g.constraints)
            if (pos[c.before] >= pos[c.after])
                out.push_back({Violation::ConstraintViolated, g.graph.id(c.before) + " < " + g.graph.id(c.after)});
    return out;
}

std::vector<Violation> verify_drawing(const OrderedLevelGraph& g, const LevelEmbedding& emb) {
    std::vector<int> pos;
    auto out = check_structure(g.graph, emb, pos);
    if (std::any_of(out.begin(), out.end(), [](auto& v) { return v.kind == Violation::StructureMismatch; }))
        return out;
    for (int l = 1; l <= g.graph.height; ++l) {
        auto order = emb.vertex_order(l);
        for (std::size_t k = 0; k < order.size(); ++k)
            if (g.rank[order[k]] != static_cast<int>(k) + 1) {
                out.push_back({Violation::RankMismatch, "vertex " + g.graph.id(order[k]) + " drawn at position " +
                                                            std::to_string(k + 1) + " on level " + std::to_string(l)});
            }
    }
    return out;
}

namespace {

struct Search {
    const LevelGraph& g;
    std::vector<std::vector<int>> lv;
    std::vector<std::vector<int>> preds;  // constraint predecessors
    std::vector<std::vector<int>> lower;  // neighbours one level down
    std::vector<int> pos;
    std::vector<std::vector<int>> order;
    std::uint64_t nodes = 0, cap;

    Search(const ConstrainedLevelGraph& p, std::uint64_t cap_) : g(p.graph), cap(cap_) {
        lv = g.by_level();
        int n = static_cast<int>(g.size());
        preds.resize(n);
        lower.resize(n);
        for (auto c : p.constraints) preds[c.after].push_back(c.before);
        for (auto e : g.edges()) lower[e.v].push_back(e.u);  // proper: e.u is one level down
        pos.assign(n, -1);
        order.resize(g.height);
    }

    bool level(int i) {
        if (i == g.height) return true;
        order[i].clear();
        return place(i, 0, -1);
    }

    // prefix of level i fixed; maxlow = largest lower-neighbour position used so far
    bool place(int i, int k, int maxlow) {
        if (++nodes > cap) throw Error(ErrorKind::SearchSpaceExceeded, "oracle search exceeded node cap");
        auto& vs = lv[i];
        if (k == static_cast<int>(vs.size())) return level(i + 1);
        for (int v : vs) {
            if (pos[v] >= 0) continue;
            bool ok = true;
            for (int p : preds[v])
                if (pos[p] < 0) { ok = false; break; }
            if (!ok) continue;
            int lo = 1 << 30, hi = -1;
            for (int u : lower[v]) {
                lo = std::min(lo, pos[u]);
                hi = std::max(hi, pos[u]);
            }
            if (hi >= 0 && lo < maxlow) continue;
            pos[v] = k;
            order[i].push_back(v);
            if (place(i, k + 1, std::max(maxlow, hi))) return true;
            order[i].pop_back();
            pos[v] = -1;
        }
        return false;
    }
};

}  // namespace

std::optional<LevelEmbedding> brute_clp(const ConstrainedLevelGraph& g, OracleLimits limits) {
    for (auto c : g.constraints)
        if (c.before == c.after) return std::nullopt;
    auto pr = make_proper(g);
    Search s(pr.proper, limits.max_nodes);
    if (!s.level(0)) return std::nullopt;
    LevelEmbedding emb;
    emb.levels.resize(pr.proper.graph.height);
    for (int i = 0; i < pr.proper.graph.height; ++i)
        for (int v : s.order[i]) emb.levels[i].push_back({Item::vertex, v});
    return unsubdivide(g, pr.map, emb);
}

std::optional<LevelEmbedding> brute_olp(const OrderedLevelGraph& g, OracleLimits limits) {
    return brute_clp(as_constrained(g), limits);
}

}  // namespace levelplan
