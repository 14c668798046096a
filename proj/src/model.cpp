#include "levelplan/model.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <queue>
#include <set>

namespace levelplan {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::UnknownVertex: return "UnknownVertex";
        case ErrorKind::EdgeNotUpward: return "EdgeNotUpward";
        case ErrorKind::SameLevelEdge: return "SameLevelEdge";
        case ErrorKind::DuplicateRank: return "DuplicateRank";
        case ErrorKind::ConstraintAcrossLevels: return "ConstraintAcrossLevels";
        case ErrorKind::EmptyLevel: return "EmptyLevel";
        case ErrorKind::MalformedInput: return "MalformedInput";
        case ErrorKind::OrderCycle: return "OrderCycle";
        case ErrorKind::SequenceInvalid: return "SequenceInvalid";
        case ErrorKind::SearchSpaceExceeded: return "SearchSpaceExceeded";
        case ErrorKind::ResourceLimit: return "ResourceLimit";
        case ErrorKind::ParameterInvalid: return "ParameterInvalid";
        case ErrorKind::WitnessInvalid: return "WitnessInvalid";
        case ErrorKind::UnsupportedHeight: return "UnsupportedHeight";
    }
    return "Unknown";
}

static std::uint64_t pair_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

int LevelGraph::add_vertex(const std::string& id, int lvl) {
    if (index_.count(id)) throw Error(ErrorKind::MalformedInput, "duplicate vertex id " + id);
    if (lvl < 1) throw Error(ErrorKind::MalformedInput, "level must be >= 1 for " + id);
    int v = static_cast<int>(ids_.size());
    ids_.push_back(id);
    level_.push_back(lvl);
    adj_.emplace_back();
    inc_.emplace_back();
    index_.emplace(id, v);
    height = std::max(height, lvl);
    return v;
}

int LevelGraph::add_edge(int u, int v) {
    if (u == v) throw Error(ErrorKind::SameLevelEdge, "self-loop at " + ids_[u]);
    if (level_[u] == level_[v])
        throw Error(ErrorKind::SameLevelEdge, "edge " + ids_[u] + "-" + ids_[v] + " within one level");
    if (level_[u] > level_[v])
        throw Error(ErrorKind::EdgeNotUpward, "edge " + ids_[u] + "->" + ids_[v] + " points downward");
    auto key = pair_key(u, v);
    if (edge_index_.count(key))
        throw Error(ErrorKind::MalformedInput, "parallel edge " + ids_[u] + "-" + ids_[v]);
    int e = static_cast<int>(edges_.size());
    edges_.push_back({u, v});
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    inc_[u].push_back(e);
    inc_[v].push_back(e);
    edge_index_.emplace(key, e);
    return e;
}

int LevelGraph::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

int LevelGraph::index_of(const std::string& id) const {
    int v = find(id);
    if (v < 0) throw Error(ErrorKind::UnknownVertex, "unknown vertex " + id);
    return v;
}

int LevelGraph::find_edge(int u, int v) const {
    auto it = edge_index_.find(pair_key(u, v));
    return it == edge_index_.end() ? -1 : it->second;
}

std::vector<std::vector<int>> LevelGraph::by_level() const {
    std::vector<std::vector<int>> out(height);
    for (int v = 0; v < static_cast<int>(size()); ++v) out[level_[v] - 1].push_back(v);
    return out;
}

void ConstrainedLevelGraph::add_constraint(int before, int after) {
    if (graph.level(before) != graph.level(after))
        throw Error(ErrorKind::ConstraintAcrossLevels,
                    "constraint " + graph.id(before) + " < " + graph.id(after) + " spans two levels");
    if (before == after)
        throw Error(ErrorKind::OrderCycle, "reflexive constraint on " + graph.id(before));
    constraints.push_back({before, after});
}

std::vector<Constraint> ConstrainedLevelGraph::on_level(int level) const {
    std::vector<Constraint> out;
    for (auto c : constraints)
        if (graph.level(c.before) == level) out.push_back(c);
    return out;
}

std::vector<std::vector<int>> OrderedLevelGraph::orders() const {
    auto lv = graph.by_level();
    for (auto& l : lv) std::sort(l.begin(), l.end(), [&](int a, int b) { return rank[a] < rank[b]; });
    return lv;
}

std::vector<int> LevelEmbedding::vertex_order(int level) const {
    std::vector<int> out;
    for (auto it : levels[level - 1])
        if (it.kind == Item::vertex) out.push_back(it.id);
    return out;
}

Coordinates synthesize_coordinates(const LevelGraph& g, const LevelEmbedding& emb) {
    Coordinates c;
    c.vertex.assign(g.size(), {0, 0});
    std::vector<std::vector<std::pair<int, double>>> marks(g.edge_count());
    for (int i = 0; i < static_cast<int>(emb.levels.size()); ++i) {
        int x = 0;
        for (auto it : emb.levels[i]) {
            if (it.kind == Item::vertex)
                c.vertex[it.id] = {static_cast<double>(x), i + 1};
            else
                marks[it.id].push_back({i + 1, static_cast<double>(x)});
            ++x;
        }
    }
    c.polyline.resize(g.edge_count());
    for (int e = 0; e < static_cast<int>(g.edge_count()); ++e) {
        auto& pl = c.polyline[e];
        pl.push_back(c.vertex[g.edge(e).u]);
        std::sort(marks[e].begin(), marks[e].end());
        for (auto [y, x] : marks[e]) pl.push_back({x, y});
        pl.push_back(c.vertex[g.edge(e).v]);
    }
    return c;
}

bool SubdivisionMap::empty() const {
    for (auto& c : chain)
        if (!c.empty()) return false;
    return true;
}

ProperResult make_proper(const ConstrainedLevelGraph& g) {
    ProperResult r;
    auto& p = r.proper;
    const auto& G = g.graph;
    for (int v = 0; v < static_cast<int>(G.size()); ++v) p.graph.add_vertex(G.id(v), G.level(v));
    p.graph.height = G.height;
    r.map.chain.resize(G.edge_count());
    r.map.owner.assign(G.size(), -1);
    for (int e = 0; e < static_cast<int>(G.edge_count()); ++e) {
        auto [u, v] = G.edge(e);
        int prev = u;
        for (int l = G.level(u) + 1; l < G.level(v); ++l) {
            std::string id = "~" + G.id(u) + ">" + G.id(v) + "@" + std::to_string(l);
            while (p.graph.find(id) >= 0) id += "'";
            int w = p.graph.add_vertex(id, l);
            r.map.chain[e].push_back(w);
            r.map.owner.push_back(e);
            p.graph.add_edge(prev, w);
            prev = w;
        }
        p.graph.add_edge(prev, v);
    }
    p.constraints = g.constraints;
    return r;
}

LevelEmbedding unsubdivide(const ConstrainedLevelGraph& original, const SubdivisionMap& map,
                           const LevelEmbedding& proper_emb) {
    LevelEmbedding out;
    out.levels.resize(proper_emb.levels.size());
    int n = static_cast<int>(original.graph.size());
    for (std::size_t i = 0; i < proper_emb.levels.size(); ++i) {
        for (auto it : proper_emb.levels[i]) {
            if (it.kind != Item::vertex) continue;  // proper graphs carry no markers
            if (it.id < n)
                out.levels[i].push_back(it);
            else
                out.levels[i].push_back({Item::edge, map.owner[it.id]});
        }
    }
    return out;
}

std::vector<std::vector<int>> transitive_successors(const ConstrainedLevelGraph& g) {
    int n = static_cast<int>(g.graph.size());
    std::vector<std::vector<int>> succ(n);
    for (auto c : g.constraints) succ[c.before].push_back(c.after);
    std::vector<std::vector<int>> reach(n);
    std::vector<int> mark(n, -1);
    for (int s = 0; s < n; ++s) {
        std::vector<int> stack(succ[s].begin(), succ[s].end());
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (mark[x] == s) continue;
            mark[x] = s;
            reach[s].push_back(x);
            for (int y : succ[x]) stack.push_back(y);
        }
        std::sort(reach[s].begin(), reach[s].end());
    }
    return reach;
}

Stripped strip_isolated(const ConstrainedLevelGraph& g) {
    Stripped s;
    const auto& G = g.graph;
    int n = static_cast<int>(G.size());
    std::vector<int> local(n, -1);
    for (int v = 0; v < n; ++v) {
        if (G.degree(v) == 0) {
            s.removed.push_back(v);
        } else {
            local[v] = static_cast<int>(s.kept.size());
            s.kept.push_back(v);
        }
    }
    auto& I = s.instance;
    for (int v : s.kept) I.graph.add_vertex(G.id(v), G.level(v));
    I.graph.height = G.height;
    for (auto e : G.edges()) I.graph.add_edge(local[e.u], local[e.v]);
    auto reach = transitive_successors(g);
    for (int u : s.kept)
        for (int w : reach[u])
            if (local[w] >= 0) I.constraints.push_back({local[u], local[w]});
    return s;
}

LevelEmbedding reinsert_isolated(const ConstrainedLevelGraph& g, const Stripped& s,
                                 const LevelEmbedding& emb) {
    const auto& G = g.graph;
    LevelEmbedding out;
    out.levels.resize(G.height);
    std::vector<std::vector<int>> iso_by_level(G.height);
    for (int v : s.removed) iso_by_level[G.level(v) - 1].push_back(v);
    for (int i = 0; i < G.height; ++i) {
        // nodes: drawing items first, then isolated vertices of this level
        std::vector<Item> items;
        if (i < static_cast<int>(emb.levels.size()))
            for (auto it : emb.levels[i])
                items.push_back(it.kind == Item::vertex ? Item{Item::vertex, s.kept[it.id]} : it);
        int k = static_cast<int>(items.size());
        std::vector<int> node_of(G.size(), -1);
        for (int a = 0; a < k; ++a)
            if (items[a].kind == Item::vertex) node_of[items[a].id] = a;
        for (int v : iso_by_level[i]) {
            node_of[v] = static_cast<int>(items.size());
            items.push_back({Item::vertex, v});
        }
        std::vector<std::pair<int, int>> arcs;
        for (int a = 0; a + 1 < k; ++a) arcs.push_back({a, a + 1});
        for (auto c : g.constraints) {
            if (G.level(c.before) != i + 1) continue;
            int a = node_of[c.before], b = node_of[c.after];
            if (a < 0 || b < 0) continue;
            if (a < k && b < k) continue;  // already realized by the drawing
            arcs.push_back({a, b});
        }
        // isolated vertices go first whenever they are free ("leftmost")
        std::vector<std::string> keys(items.size());
        for (std::size_t a = 0; a < items.size(); ++a) {
            bool iso = static_cast<int>(a) >= k;
            char buf[32];
            std::snprintf(buf, sizeof buf, "1%09zu", a);
            keys[a] = iso ? "0" + G.id(items[a].id) : std::string(buf);
        }
        auto order = topo_sort(static_cast<int>(items.size()), arcs, keys);
        if (!order) throw Error(ErrorKind::OrderCycle, "isolated vertex reinsertion on level " + std::to_string(i + 1));
        for (int a : *order) out.levels[i].push_back(items[a]);
    }
    return out;
}

SubInstance induced(const ConstrainedLevelGraph& g, const std::vector<int>& vertices) {
    SubInstance s;
    const auto& G = g.graph;
    std::vector<int> local(G.size(), -1);
    for (int v : vertices) {
        local[v] = static_cast<int>(s.to_parent.size());
        s.to_parent.push_back(v);
        s.instance.graph.add_vertex(G.id(v), G.level(v));
    }
    s.instance.graph.height = G.height;
    for (int e = 0; e < static_cast<int>(G.edge_count()); ++e) {
        auto [u, v] = G.edge(e);
        if (local[u] >= 0 && local[v] >= 0) {
            s.instance.graph.add_edge(local[u], local[v]);
            s.to_parent_edge.push_back(e);
        }
    }
    for (auto c : g.constraints)
        if (local[c.before] >= 0 && local[c.after] >= 0)
            s.instance.constraints.push_back({local[c.before], local[c.after]});
    return s;
}

Components components(const ConstrainedLevelGraph& g) {
    Components c;
    const auto& G = g.graph;
    int n = static_cast<int>(G.size());
    c.comp_of.assign(n, -1);
    for (int s = 0; s < n; ++s) {
        if (c.comp_of[s] >= 0) continue;
        int id = static_cast<int>(c.members.size());
        c.members.emplace_back();
        std::vector<int> stack{s};
        c.comp_of[s] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            c.members[id].push_back(x);
            for (int y : G.neighbors(x))
                if (c.comp_of[y] < 0) {
                    c.comp_of[y] = id;
                    stack.push_back(y);
                }
        }
        std::sort(c.members[id].begin(), c.members[id].end());
    }
    for (auto k : g.constraints)
        if (c.comp_of[k.before] != c.comp_of[k.after]) c.cross.push_back(k);
    for (auto& m : c.members) c.parts.push_back(induced(g, m));
    return c;
}

std::optional<std::vector<int>> topo_sort(int n, const std::vector<std::pair<int, int>>& arcs,
                                          const std::vector<std::string>& keys) {
    std::vector<std::vector<int>> out(n);
    std::vector<int> indeg(n, 0);
    for (auto [a, b] : arcs) {
        out[a].push_back(b);
        ++indeg[b];
    }
    auto cmp = [&](int a, int b) { return keys[a] != keys[b] ? keys[a] > keys[b] : a > b; };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);
    std::vector<int> order;
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int w : out[v])
            if (--indeg[w] == 0) ready.push(w);
    }
    if (static_cast<int>(order.size()) != n) return std::nullopt;
    return order;
}

template <class G>
static std::vector<int> level_renumbering(const G& g) {
    std::vector<int> used(g.graph.height + 1, 0);
    for (int v = 0; v < static_cast<int>(g.graph.size()); ++v) used[g.graph.level(v)] = 1;
    std::vector<int> to(g.graph.height + 1, 0);
    int next = 0;
    for (int l = 1; l <= g.graph.height; ++l)
        if (used[l]) to[l] = ++next;
    return to;
}

template <class G>
static LevelGraph relevel(const G& g, const std::vector<int>& to) {
    LevelGraph out;
    for (int v = 0; v < static_cast<int>(g.graph.size()); ++v)
        out.add_vertex(g.graph.id(v), to[g.graph.level(v)]);
    for (auto e : g.graph.edges()) out.add_edge(e.u, e.v);
    return out;
}

OrderedLevelGraph compact_levels(const OrderedLevelGraph& g) {
    OrderedLevelGraph out;
    out.graph = relevel(g, level_renumbering(g));
    out.rank = g.rank;
    return out;
}

ConstrainedLevelGraph compact_levels(const ConstrainedLevelGraph& g) {
    ConstrainedLevelGraph out;
    out.graph = relevel(g, level_renumbering(g));
    out.constraints = g.constraints;
    return out;
}

ConstrainedLevelGraph as_constrained(const OrderedLevelGraph& g) {
    ConstrainedLevelGraph out;
    out.graph = g.graph;
    for (auto& lv : g.orders())
        for (std::size_t i = 0; i + 1 < lv.size(); ++i) out.constraints.push_back({lv[i], lv[i + 1]});
    return out;
}

}  // namespace levelplan
