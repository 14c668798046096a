#include "levelplan/clp3.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <thread>

#include "levelplan/clp2.hpp"

namespace levelplan::clp3 {
namespace {

using Orders = std::vector<std::vector<int>>;

// Kosaraju; component numbers follow a topological order of the condensation
std::vector<int> strong_components(const std::vector<std::vector<int>>& out, int& count) {
    int n = static_cast<int>(out.size());
    std::vector<std::vector<int>> in(n);
    for (int v = 0; v < n; ++v)
        for (int w : out[v]) in[w].push_back(v);
    std::vector<int> finish;
    std::vector<char> seen(n, 0);
    for (int r = 0; r < n; ++r) {
        if (seen[r]) continue;
        std::vector<std::pair<int, std::size_t>> st{{r, 0}};
        seen[r] = 1;
        while (!st.empty()) {
            int v = st.back().first;
            if (st.back().second < out[v].size()) {
                int w = out[v][st.back().second++];
                if (!seen[w]) {
                    seen[w] = 1;
                    st.push_back({w, 0});
                }
            } else {
                finish.push_back(v);
                st.pop_back();
            }
        }
    }
    std::vector<int> comp(n, -1);
    count = 0;
    for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
        if (comp[*it] != -1) continue;
        std::vector<int> st{*it};
        comp[*it] = count;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int w : in[v])
                if (comp[w] == -1) {
                    comp[w] = count;
                    st.push_back(w);
                }
        }
        ++count;
    }
    return comp;
}

struct Cat {
    std::vector<int> spine;
    std::vector<std::vector<int>> leaves;
};

// caterpillar test on the connected vertex set `verts` (membership in `inside`)
std::optional<Cat> caterpillar_of(const ClosedConstraints& rel, const std::vector<int>& verts,
                                  const std::vector<char>& inside, const std::vector<std::string>& ids) {
    std::map<int, int> deg;
    long twice = 0;
    for (int v : verts) {
        int d = 0;
        for (int w : rel.neighbors(v)) d += inside[w] ? 1 : 0;
        deg[v] = d;
        twice += d;
    }
    if (twice / 2 != static_cast<long>(verts.size()) - 1) return std::nullopt;
    Cat c;
    std::vector<int> spine;
    for (int v : verts)
        if (deg[v] >= 2) spine.push_back(v);
    if (spine.empty()) return c;
    auto spine_nbrs = [&](int v) {
        std::vector<int> out;
        for (int w : rel.neighbors(v))
            if (inside[w] && deg[w] >= 2) out.push_back(w);
        return out;
    };
    int start = -1;
    for (int v : spine) {
        auto nb = spine_nbrs(v);
        if (nb.size() > 2) return std::nullopt;
        if (nb.size() <= 1 && (start < 0 || ids[v] < ids[start])) start = v;
    }
    int prev = -1, cur = start;
    while (cur >= 0) {
        c.spine.push_back(cur);
        int next = -1;
        for (int w : spine_nbrs(cur))
            if (w != prev) next = w;
        prev = cur;
        cur = next;
    }
    for (int v : c.spine) {
        std::vector<int> lv;
        for (int w : rel.neighbors(v))
            if (inside[w] && deg[w] == 1) lv.push_back(w);
        c.leaves.push_back(lv);
    }
    return c;
}

// constraints forcing a caterpillar to be drawn along its spine order
std::vector<std::pair<int, int>> spine_constraints(const Cat& c) {
    std::vector<std::pair<int, int>> cs;
    int r = static_cast<int>(c.spine.size());
    for (int i = 0; i + 2 < r; ++i) cs.push_back({c.spine[i], c.spine[i + 2]});
    for (int i = 0; i < r; ++i)
        for (int u : c.leaves[i]) {
            if (i > 0) cs.push_back({c.spine[i - 1], u});
            if (i + 1 < r) cs.push_back({u, c.spine[i + 1]});
        }
    return cs;
}

// smallest-id-first linear extension of the relation restricted to `verts`
std::vector<int> linear_extension(const ClosedConstraints& rel, const std::vector<int>& verts,
                                  const std::vector<std::string>& ids) {
    int k = static_cast<int>(verts.size());
    std::vector<std::pair<int, int>> arcs;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b && rel.less(verts[a], verts[b])) arcs.push_back({a, b});
    std::vector<std::string> keys;
    for (int v : verts) keys.push_back(ids[v]);
    auto order = topo_sort(k, arcs, keys);
    std::vector<int> out;
    if (!order) return out;
    for (int a : *order) out.push_back(verts[a]);
    return out;
}

struct Context {
    const ConstrainedLevelGraph& g;
    ClosedConstraints rel;
    std::vector<int> comp_of;
    std::vector<std::vector<int>> members;
    std::vector<std::vector<int>> arcs;  // component graph
    std::vector<std::string> ids;
};

Context make_context(const ConstrainedLevelGraph& g) {
    auto rel = close_constraints(g);
    if (!rel) throw Error(ErrorKind::OrderCycle, "constraints are cyclic");
    auto comps = components(g);
    Context cx{g, std::move(*rel), comps.comp_of, comps.members, {}, {}};
    int q = static_cast<int>(cx.members.size());
    std::vector<std::set<int>> arcs(q);
    int n = static_cast<int>(g.graph.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (cx.comp_of[a] != cx.comp_of[b] && cx.rel.less(a, b)) arcs[cx.comp_of[a]].insert(cx.comp_of[b]);
    for (auto& s : arcs) cx.arcs.emplace_back(s.begin(), s.end());
    for (int v = 0; v < n; ++v) cx.ids.push_back(g.graph.id(v));
    return cx;
}

// BFS tree of one component; returns parent (-2 outside the component)
std::vector<int> bfs_tree(const LevelGraph& G, const std::vector<char>& inside, int root, std::vector<int>& depth) {
    std::vector<int> parent(G.size(), -2);
    depth.assign(G.size(), -1);
    std::vector<int> q{root};
    parent[root] = -1;
    depth[root] = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (int w : G.neighbors(q[i]))
            if (inside[w] && parent[w] == -2) {
                parent[w] = q[i];
                depth[w] = depth[q[i]] + 1;
                q.push_back(w);
            }
    return parent;
}

int anchor_of(const Context& cx, int comp, int root, const std::vector<int>& hook, int band) {
    const auto& G = cx.g.graph;
    std::vector<char> inside(G.size(), 0);
    for (int v : cx.members[comp]) inside[v] = 1;
    std::vector<int> depth;
    auto parent = bfs_tree(G, inside, root, depth);
    int a = hook.front();
    for (int v : hook) {
        int b = v;
        while (depth[a] > depth[b]) a = parent[a];
        while (depth[b] > depth[a]) b = parent[b];
        while (a != b) {
            a = parent[a];
            b = parent[b];
        }
    }
    if (G.level(a) == 2) a = parent[a];
    if (a < 0 || G.level(a) != band) return -1;
    return a;
}

// far spine end of the hook piece (anchor + parts of comp - anchor meeting `hook`)
int far_end(const Context& cx, int comp, int anchor, const std::vector<int>& hook, int band) {
    const auto& G = cx.g.graph;
    std::vector<char> inside(G.size(), 0);
    for (int v : cx.members[comp]) inside[v] = 1;
    inside[anchor] = 0;
    std::vector<char> piece(G.size(), 0);
    std::vector<int> verts{anchor};
    piece[anchor] = 1;
    for (int h : hook) {
        if (piece[h]) continue;
        std::vector<int> q{h};
        piece[h] = 1;
        for (std::size_t i = 0; i < q.size(); ++i) {
            verts.push_back(q[i]);
            for (int w : G.neighbors(q[i]))
                if (inside[w] && !piece[w]) {
                    piece[w] = 1;
                    q.push_back(w);
                }
        }
    }
    for (int v : verts)
        if (G.level(v) != 2 && G.level(v) != band) return -1;
    std::vector<int> depth;
    bfs_tree(G, piece, anchor, depth);
    // spine = piece vertices with two piece neighbours
    int best = -1, best_any = -1;
    long edges = 0;
    for (int v : verts) {
        int d = 0;
        for (int w : G.neighbors(v)) d += piece[w] ? 1 : 0;
        edges += d;
        auto better = [&](int cur) {
            return cur < 0 || depth[v] > depth[cur] || (depth[v] == depth[cur] && G.id(v) < G.id(cur));
        };
        if (d >= 2 && better(best)) best = v;
        if (better(best_any)) best_any = v;
    }
    if (edges / 2 != static_cast<long>(verts.size()) - 1) return -1;
    return best >= 0 ? best : best_any;
}

std::vector<HookStructure> hooks_in(const Context& cx, int s, int t) {
    const auto& G = cx.g.graph;
    int c0 = cx.comp_of[s], c1 = cx.comp_of[t];
    if (c0 == c1) return {HookStructure{{c0}, {}, {}, {}, {}}};
    int q = static_cast<int>(cx.members.size());
    std::vector<int> par(q, -2);
    std::vector<int> bfs{c1};
    par[c1] = -1;
    for (std::size_t i = 0; i < bfs.size() && par[c0] == -2; ++i)
        for (int d : cx.arcs[bfs[i]])
            if (par[d] == -2) {
                par[d] = bfs[i];
                bfs.push_back(d);
            }
    if (par[c0] == -2) return {};
    std::vector<int> chain;
    for (int c = c0; c != -1; c = par[c]) chain.push_back(c);
    int k = static_cast<int>(chain.size());

    auto by_id = [&](std::vector<int> v) {
        std::sort(v.begin(), v.end(), [&](int a, int b) { return G.id(a) < G.id(b); });
        return v;
    };
    // middle vertices of `comp` related to `other`; other_first: other < v
    auto touched = [&](int comp, int other, bool other_first) {
        std::vector<int> out;
        for (int v : cx.members[comp]) {
            if (G.level(v) != 2) continue;
            for (int x : cx.members[other])
                if (other_first ? cx.rel.less(x, v) : cx.rel.less(v, x)) {
                    out.push_back(v);
                    break;
                }
        }
        return by_id(out);
    };
    auto band_of = [&](const std::vector<int>& hook) {
        std::set<int> lv;
        for (int v : hook)
            for (int w : G.neighbors(v)) lv.insert(G.level(w));
        return lv.size() == 1 ? *lv.begin() : -1;
    };
    auto end_roots = [&](int comp, int band) -> std::vector<int> {
        std::vector<int> opp;
        for (int v : cx.members[comp])
            if (G.level(v) == 4 - band) opp.push_back(v);
        if (!opp.empty()) return {by_id(opp).front()};
        std::vector<char> inside(G.size(), 0);
        for (int v : cx.members[comp]) inside[v] = 1;
        auto cat = caterpillar_of(cx.rel, cx.members[comp], inside, cx.ids);
        if (!cat) return {};
        if (cat->spine.empty()) return by_id(cx.members[comp]);
        if (cat->spine.size() == 1) return {cat->spine.front()};
        return {cat->spine.front(), cat->spine.back()};
    };
    auto link_root = [&](int comp, int other, bool comp_first) -> std::vector<int> {
        for (int u : by_id(cx.members[comp]))
            for (int x : cx.members[other])
                if (comp_first ? cx.rel.less(u, x) : cx.rel.less(x, u)) return {u};
        return {};
    };

    std::vector<std::vector<int>> right_opts(k - 1), left_opts(k - 1);
    std::vector<std::vector<int>> hook_r(k - 1), hook_l(k - 1);
    std::vector<int> band_r(k - 1), band_l(k - 1);
    for (int i = 0; i + 1 < k; ++i) {
        hook_r[i] = touched(chain[i], chain[i + 1], true);
        hook_l[i] = touched(chain[i + 1], chain[i], false);
        if (hook_r[i].empty() || hook_l[i].empty()) return {};
        band_r[i] = band_of(hook_r[i]);
        band_l[i] = band_of(hook_l[i]);
        if (band_r[i] < 0 || band_l[i] < 0 || band_r[i] == band_l[i]) return {};
        auto roots_r = i > 0 ? link_root(chain[i], chain[i - 1], true) : end_roots(chain[i], band_r[i]);
        auto roots_l = i + 2 < k ? link_root(chain[i + 1], chain[i + 2], false) : end_roots(chain[i + 1], band_l[i]);
        for (int u : roots_r) {
            int a = anchor_of(cx, chain[i], u, hook_r[i], band_r[i]);
            if (a >= 0 && std::find(right_opts[i].begin(), right_opts[i].end(), a) == right_opts[i].end())
                right_opts[i].push_back(a);
        }
        for (int u : roots_l) {
            int a = anchor_of(cx, chain[i + 1], u, hook_l[i], band_l[i]);
            if (a >= 0 && std::find(left_opts[i].begin(), left_opts[i].end(), a) == left_opts[i].end())
                left_opts[i].push_back(a);
        }
        if (right_opts[i].empty() || left_opts[i].empty()) return {};
    }

    std::vector<HookStructure> out;
    HookStructure h;
    h.chain = chain;
    h.anchor_right.resize(k - 1);
    h.anchor_left.resize(k - 1);
    // only the outermost anchors can have alternatives
    std::vector<std::pair<int, int>> choices;
    for (int a = 0; a < static_cast<int>(right_opts[0].size()); ++a)
        for (int b = 0; b < static_cast<int>(left_opts[k - 2].size()); ++b) choices.push_back({a, b});
    for (auto [a, b] : choices) {
        for (int i = 0; i + 1 < k; ++i) {
            h.anchor_right[i] = right_opts[i][i == 0 ? a : 0];
            h.anchor_left[i] = left_opts[i][i == k - 2 ? b : 0];
        }
        h.spine_end_right.assign(k - 1, -1);
        h.spine_end_left.assign(k - 1, -1);
        bool good = true;
        for (int i = 0; i + 1 < k && good; ++i) {
            h.spine_end_right[i] = far_end(cx, chain[i + 1], h.anchor_left[i], hook_l[i], band_l[i]);
            h.spine_end_left[i] = far_end(cx, chain[i], h.anchor_right[i], hook_r[i], band_r[i]);
            good = h.spine_end_right[i] >= 0 && h.spine_end_left[i] >= 0;
        }
        if (good) out.push_back(h);
    }
    return out;
}

// constraints hold and no two edges cross
bool sound(const ConstrainedLevelGraph& g, const Orders& orders) {
    const auto& G = g.graph;
    std::vector<int> pos(G.size(), -1);
    for (auto& lv : orders)
        for (int i = 0; i < static_cast<int>(lv.size()); ++i) pos[lv[i]] = i;
    for (int v = 0; v < static_cast<int>(G.size()); ++v)
        if (pos[v] < 0) return false;
    for (auto c : g.constraints)
        if (pos[c.before] >= pos[c.after]) return false;
    const auto& E = G.edges();
    for (std::size_t i = 0; i < E.size(); ++i)
        for (std::size_t j = i + 1; j < E.size(); ++j) {
            if (G.level(E[i].u) != G.level(E[j].u) || G.level(E[i].v) != G.level(E[j].v)) continue;
            long a = pos[E[i].u] - pos[E[j].u], b = pos[E[i].v] - pos[E[j].v];
            if (a * b < 0) return false;
        }
    return true;
}

}  // namespace

std::vector<SubInstance> decompose_scc(const ConstrainedLevelGraph& g) {
    auto comps = components(g);
    int q = static_cast<int>(comps.members.size());
    std::vector<std::vector<int>> out(q);
    auto succ = transitive_successors(g);
    for (int a = 0; a < static_cast<int>(g.graph.size()); ++a)
        for (int b : succ[a])
            if (comps.comp_of[a] != comps.comp_of[b]) out[comps.comp_of[a]].push_back(comps.comp_of[b]);
    int count = 0;
    auto scc = strong_components(out, count);
    std::vector<std::vector<int>> verts(count);
    for (int c = 0; c < q; ++c)
        for (int v : comps.members[c]) verts[scc[c]].push_back(v);
    std::vector<std::pair<int, int>> arcs;
    for (int c = 0; c < q; ++c)
        for (int d : out[c])
            if (scc[c] != scc[d]) arcs.push_back({scc[c], scc[d]});
    std::vector<std::string> keys;
    for (auto& vs : verts) {
        std::sort(vs.begin(), vs.end());
        std::string k = g.graph.id(vs.front());
        for (int v : vs) k = std::min(k, g.graph.id(v));
        keys.push_back(k);
    }
    auto order = topo_sort(count, arcs, keys);
    std::vector<SubInstance> parts;
    for (int i : *order) parts.push_back(induced(g, verts[i]));
    return parts;
}

std::vector<HookStructure> resolve_hooks(const ConstrainedLevelGraph& g, int s, int t) {
    return hooks_in(make_context(g), s, t);
}

Branch::Branch(const ConstrainedLevelGraph& g, const ClosedConstraints& closed, int s, int t,
               HookStructure hooks)
    : g_(g), base_(static_cast<int>(g.graph.size())), hooks_(std::move(hooks)), rel_(closed) {
    for (int v = 0; v < base_; ++v) ids_.push_back(g.graph.id(v));
    alive_.assign(base_, 1);
    bb_.s = s;
    bb_.t = t;
}

bool Branch::reject(const std::string& why) {
    reason_ = why;
    return false;
}

int Branch::new_vertex(int level, const std::string& id) {
    int v = rel_.add_vertex(level);
    ids_.push_back(id);
    alive_.push_back(1);
    return v;
}

bool Branch::link(int u, int v) {
    if (std::abs(rel_.level(u) - rel_.level(v)) == 2) {
        int z = new_vertex(2, "~" + ids_[u] + "~" + ids_[v]);
        return rel_.add_edge(u, z) && rel_.add_edge(z, v);
    }
    return rel_.add_edge(u, v);
}

std::vector<int> Branch::alive_component(int from, const std::vector<char>& blocked) const {
    std::vector<char> seen(rel_.size(), 0);
    std::vector<int> q{from};
    seen[from] = 1;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (int w : rel_.neighbors(q[i]))
            if (alive_[w] && !blocked[w] && !seen[w]) {
                seen[w] = 1;
                q.push_back(w);
            }
    return q;
}

bool Branch::connect_hooks() {
    for (std::size_t i = 0; i < hooks_.anchor_right.size(); ++i) {
        if (!link(hooks_.anchor_right[i], hooks_.spine_end_right[i]) ||
            !link(hooks_.anchor_left[i], hooks_.spine_end_left[i]))
            return reject("hook edge closes a cycle");
    }
    std::vector<char> none(rel_.size(), 0), seen(rel_.size(), 0);
    for (int v : alive_component(bb_.s, none)) seen[v] = 1;
    for (int v = 0; v < rel_.size(); ++v) {
        if (seen[v] || !alive_[v]) continue;
        std::set<int> lv;
        for (int w : alive_component(v, none)) {
            seen[w] = 1;
            lv.insert(rel_.level(w));
        }
        if (lv.size() == 3) return reject("enclosed component spans three levels");
    }
    return true;
}

bool Branch::totalize(const std::vector<int>& vertices) {
    auto order = linear_extension(rel_, vertices, ids_);
    if (order.size() != vertices.size()) return false;
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (!rel_.add(order[i], order[i + 1])) return false;
    return true;
}

bool Branch::orient_backbone() {
    int s = bb_.s, t = bb_.t;
    std::vector<int> mids;
    for (int v : rel_.on_level(2))
        if (alive_[v]) mids.push_back(v);
    if (s == t) {
        if (mids.size() != 1) return reject("s = t but further middle vertices");
    } else {
        for (int v : mids) {
            if (v != s && !rel_.add(s, v)) return reject("s cannot be leftmost");
            if (v != t && !rel_.add(v, t)) return reject("t cannot be rightmost");
        }
    }
    int n = rel_.size();
    std::vector<char> none(n, 0);
    auto main = alive_component(s, none);
    bb_.on_backbone.assign(n, 0);
    if (s == t) {
        bb_.on_backbone[s] = 1;
    } else {
        if (std::find(main.begin(), main.end(), t) == main.end()) return reject("t not connected to s");
        // biconnected blocks of the main component
        std::vector<int> disc(n, -1), low(n, 0);
        std::vector<std::vector<int>> blocks;
        std::vector<int> vstack;
        struct Frame {
            int v, parent;
            std::size_t next;
        };
        std::vector<Frame> st{{s, -1, 0}};
        int timer = 0;
        disc[s] = low[s] = timer++;
        vstack.push_back(s);
        while (!st.empty()) {
            auto& f = st.back();
            const auto& nb = rel_.neighbors(f.v);
            if (f.next < nb.size()) {
                int w = nb[f.next++];
                if (!alive_[w] || w == f.parent) continue;
                if (disc[w] < 0) {
                    disc[w] = low[w] = timer++;
                    vstack.push_back(w);
                    st.push_back({w, f.v, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
            } else {
                int v = f.v, p = f.parent;
                st.pop_back();
                if (p < 0) continue;
                low[p] = std::min(low[p], low[v]);
                if (low[v] >= disc[p]) {
                    std::vector<int> b{p};
                    while (true) {
                        int x = vstack.back();
                        vstack.pop_back();
                        b.push_back(x);
                        if (x == v) break;
                    }
                    blocks.push_back(b);
                }
            }
        }
        // path s -> t in the block tree (vertex nodes 0..n-1, block nodes n..)
        int nb = static_cast<int>(blocks.size());
        std::vector<std::vector<int>> tree(n + nb);
        for (int b = 0; b < nb; ++b)
            for (int v : blocks[b]) {
                tree[v].push_back(n + b);
                tree[n + b].push_back(v);
            }
        std::vector<int> par(n + nb, -2);
        std::vector<int> q{s};
        par[s] = -1;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (int w : tree[q[i]])
                if (par[w] == -2) {
                    par[w] = q[i];
                    q.push_back(w);
                }
        for (int x = t; x != -1; x = par[x])
            if (x >= n)
                for (int v : blocks[x - n]) bb_.on_backbone[v] = 1;
    }
    bb_.order.assign(3, {});
    position_.assign(n, -1);
    for (int l = 1; l <= 3; ++l) {
        std::vector<int> on;
        for (int v : rel_.on_level(l))
            if (alive_[v] && bb_.on_backbone[v]) on.push_back(v);
        if (!totalize(on)) return reject("backbone level " + std::to_string(l) + " has no consistent order");
        std::sort(on.begin(), on.end(), [&](int a, int b) { return rel_.less(a, b); });
        for (int i = 0; i < static_cast<int>(on.size()); ++i) position_[on[i]] = i;
        bb_.order[l - 1] = on;
    }
    if (!compute_gaps()) return false;
    return true;
}

bool Branch::compute_gaps() {
    const auto& B = bb_.order[1];
    int q = static_cast<int>(B.size()) - 1;
    bb_.gaps.clear();
    for (int band : {1, 3}) {
        std::vector<std::pair<int, int>> edges;  // (middle position, outer vertex)
        for (int m : B)
            for (int o : rel_.neighbors(m))
                if (rel_.level(o) == band && bb_.on_backbone[o]) edges.push_back({position_[m], o});
        std::sort(edges.begin(), edges.end(), [&](auto a, auto b) {
            return a.first != b.first ? a.first < b.first : position_[a.second] < position_[b.second];
        });
        int e = 0, E = static_cast<int>(edges.size());
        int run_left = -2, run_first = 0;
        auto flush = [&](int last) {
            if (run_left == -2) return;
            int right = run_left + 1;
            int ol = run_left >= 0 ? edges[run_left].second : -1;
            int orr = right < E ? edges[right].second : -1;
            if (ol >= 0 && orr >= 0 && position_[ol] >= position_[orr]) return;
            Gap g;
            g.band = band;
            g.first_slot = run_first;
            g.last_slot = last;
            g.mid_left = B[run_first];
            g.mid_right = B[last + 1];
            g.outer_left = ol;
            g.outer_right = orr;
            bb_.gaps.push_back(g);
        };
        for (int k = 0; k < q; ++k) {
            while (e < E && edges[e].first <= k) ++e;
            if (e - 1 != run_left) {
                flush(k - 1);
                run_left = e - 1;
                run_first = k;
            }
        }
        flush(q - 1);
    }
    std::sort(bb_.gaps.begin(), bb_.gaps.end(), [](const Gap& a, const Gap& b) {
        return a.first_slot != b.first_slot ? a.first_slot < b.first_slot : a.band < b.band;
    });
    bb_.groups = 0;
    for (std::size_t i = 0; i < bb_.gaps.size(); ++i) {
        if (i == 0 || bb_.gaps[i].band != bb_.gaps[i - 1].band) ++bb_.groups;
        bb_.gaps[i].group = bb_.groups;
    }
    return true;
}

std::vector<Piece*> Branch::objects() {
    std::vector<Piece*> out;
    for (auto& p : bb_.pieces) out.push_back(&p);
    for (auto& p : bb_.enclosed) out.push_back(&p);
    return out;
}

bool Branch::detach_and_prune() {
    int n = rel_.size();
    std::vector<char> none(n, 0);
    const auto& bone = bb_.on_backbone;
    auto gap_at = [&](int band, int slot) {
        for (int i = 0; i < static_cast<int>(bb_.gaps.size()); ++i) {
            auto& g = bb_.gaps[i];
            if (g.band == band && g.first_slot <= slot && slot <= g.last_slot) return i;
        }
        return -1;
    };
    struct Part {
        int anchor;
        std::vector<int> verts;
    };
    auto split = [&](std::vector<Part>& parts) -> bool {
        parts.clear();
        std::vector<char> seen(n, 0);
        for (int v : alive_component(bb_.s, none)) {
            if (bone[v] || seen[v]) continue;
            Part p{-1, alive_component(v, bone)};
            std::set<int> anchors;
            for (int x : p.verts) {
                seen[x] = 1;
                for (int w : rel_.neighbors(x))
                    if (bone[w]) anchors.insert(w);
            }
            if (anchors.size() != 1) return reject("piece with several anchors");
            p.anchor = *anchors.begin();
            std::set<int> lv;
            for (int x : p.verts) lv.insert(rel_.level(x));
            if (lv.size() == 3) return reject("piece spans three levels");
            parts.push_back(p);
        }
        return true;
    };

    std::vector<Part> parts;
    if (!split(parts)) return false;
    // fingers: an outer anchor whose part reaches the far outer level
    std::map<int, std::vector<int>> hands;
    for (auto& p : parts) {
        int la = rel_.level(p.anchor);
        if (la == 2) continue;
        bool far = false;
        for (int x : p.verts) far = far || rel_.level(x) == 4 - la;
        if (!far) continue;
        for (int w : rel_.neighbors(p.anchor))
            if (std::find(p.verts.begin(), p.verts.end(), w) != p.verts.end()) hands[p.anchor].push_back(w);
    }
    for (auto& [a, hand] : hands) {
        std::vector<int> xs;
        for (int w : rel_.neighbors(a))
            if (bone[w]) xs.push_back(w);
        std::sort(xs.begin(), xs.end(), [&](int x, int y) { return position_[x] < position_[y]; });
        int split_at = -1;
        for (int j = 1; j < static_cast<int>(xs.size()) && split_at < 0; ++j)
            for (int k = position_[xs[j - 1]]; k < position_[xs[j]] && split_at < 0; ++k)
                if (gap_at(4 - rel_.level(a), k) >= 0) split_at = j;
        if (split_at < 0) return reject("no room for a finger");
        for (int x : hand) {
            for (int j = 0; j < static_cast<int>(xs.size()); ++j)
                if (!(j < split_at ? rel_.add(xs[j], x) : rel_.add(x, xs[j])))
                    return reject("finger order is cyclic");
        }
        for (int x : hand) {
            rel_.remove_edge(a, x);
            detached_.push_back({a, x});
        }
    }
    // leaves hanging off the backbone
    std::vector<std::pair<int, int>> cut;
    for (int v = 0; v < n; ++v) {
        if (!alive_[v] || bone[v]) continue;
        const auto& nb = rel_.neighbors(v);
        if (nb.size() == 1 && bone[nb[0]]) cut.push_back({v, nb[0]});
    }
    for (auto lf : cut) {
        rel_.isolate(lf.first);
        alive_[lf.first] = 0;
        leaves_.push_back(lf);
    }

    if (!split(parts)) return false;
    std::map<std::pair<int, int>, int> per_anchor;
    bb_.pieces.clear();
    bb_.enclosed.clear();
    std::vector<char> placed(n, 0);
    for (auto& p : parts) {
        Piece pc;
        pc.anchor = p.anchor;
        pc.vertices = p.verts;
        std::sort(pc.vertices.begin(), pc.vertices.end());
        for (int x : pc.vertices) {
            placed[x] = 1;
            if (rel_.level(x) != 2) pc.band = rel_.level(x);
        }
        if (rel_.level(p.anchor) != 2) pc.band = rel_.level(p.anchor);
        if (pc.band == 0) return reject("piece without outer vertex");
        if (++per_anchor[{p.anchor, 0}] > 2) return reject("three pieces at one anchor");
        bb_.pieces.push_back(pc);
    }
    for (int v : alive_component(bb_.s, none)) placed[v] = 1;
    for (int v = 0; v < n; ++v) {
        if (!alive_[v] || placed[v]) continue;
        Piece pc;
        pc.vertices = alive_component(v, none);
        std::sort(pc.vertices.begin(), pc.vertices.end());
        std::set<int> lv;
        for (int x : pc.vertices) {
            placed[x] = 1;
            lv.insert(rel_.level(x));
        }
        if (lv.size() != 2 || !lv.count(2)) return reject("enclosed component is not on two levels");
        pc.band = *lv.begin() == 2 ? *lv.rbegin() : *lv.begin();
        bb_.enclosed.push_back(pc);
    }

    auto admissible = [&](const Piece& p, const Gap& g) {
        for (int x : p.vertices) {
            if (rel_.level(x) == 2) {
                if (rel_.less(x, g.mid_left) || rel_.less(g.mid_right, x)) return false;
            } else {
                if (g.outer_left >= 0 && rel_.less(x, g.outer_left)) return false;
                if (g.outer_right >= 0 && rel_.less(g.outer_right, x)) return false;
            }
        }
        return true;
    };
    for (auto* p : objects()) {
        std::vector<char> inside(n, 0);
        std::vector<int> verts = p->vertices;
        if (p->anchor >= 0) verts.push_back(p->anchor);
        for (int x : verts) inside[x] = 1;
        if (!caterpillar_of(rel_, verts, inside, ids_)) return reject("object is not a caterpillar");
        std::vector<int> cand;
        if (p->anchor < 0) {
            for (int i = 0; i < static_cast<int>(bb_.gaps.size()); ++i)
                if (bb_.gaps[i].band == p->band) cand.push_back(i);
        } else if (rel_.level(p->anchor) == p->band) {
            for (int i = 0; i < static_cast<int>(bb_.gaps.size()); ++i) {
                auto& g = bb_.gaps[i];
                if (g.band == p->band && (g.outer_left == p->anchor || g.outer_right == p->anchor)) cand.push_back(i);
            }
        } else {
            int k = position_[p->anchor];
            for (int slot : {k - 1, k}) {
                int gi = gap_at(p->band, slot);
                if (gi >= 0 && std::find(cand.begin(), cand.end(), gi) == cand.end()) cand.push_back(gi);
            }
            std::sort(cand.begin(), cand.end());
        }
        for (int gi : cand)
            if (admissible(*p, bb_.gaps[gi])) p->options.push_back(gi);
        if (p->options.empty()) return reject("object fits no gap");
    }
    return true;
}

bool Branch::place(ClosedConstraints& rel, const Piece& p, const Gap& g) const {
    for (int x : p.vertices) {
        if (rel.level(x) == 2) {
            if (!rel.add(g.mid_left, x) || !rel.add(x, g.mid_right)) return false;
        } else {
            if (g.outer_left >= 0 && !rel.add(g.outer_left, x)) return false;
            if (g.outer_right >= 0 && !rel.add(x, g.outer_right)) return false;
        }
    }
    return true;
}

bool Branch::try_place(const std::vector<std::pair<int, int>>& choice) {
    auto obj = objects();
    ClosedConstraints trial = rel_;
    for (auto [o, gi] : choice)
        if (!place(trial, *obj[o], bb_.gaps[gi])) return false;
    rel_ = std::move(trial);
    for (auto [o, gi] : choice) obj[o]->gap = gi;
    return true;
}

bool Branch::assign_gaps() {
    auto obj = objects();
    int P = static_cast<int>(bb_.pieces.size());
    int O = static_cast<int>(obj.size());
    int l = bb_.groups;
    int W = l + 2;
    int N = W + O;
    const int NEG = INT_MIN / 4;
    std::vector<std::vector<int>> d(N, std::vector<int>(N, NEG));
    auto arc = [&](int a, int b, int w) { d[a][b] = std::max(d[a][b], w); };
    for (int i = 0; i <= l; ++i) arc(i, i + 1, 1);
    for (int o = P; o < O; ++o) {
        int lo = INT_MAX, hi = 0;
        for (int gi : obj[o]->options) {
            lo = std::min(lo, bb_.gaps[gi].group);
            hi = std::max(hi, bb_.gaps[gi].group);
        }
        arc(lo - 1, W + o, 1);
        arc(W + o, hi + 1, 1);
    }
    std::vector<int> owner(rel_.size(), -1);
    for (int o = 0; o < O; ++o)
        for (int x : obj[o]->vertices) owner[x] = o;
    for (int a = 0; a < rel_.size(); ++a) {
        if (owner[a] < 0) continue;
        for (int b : rel_.on_level(rel_.level(a)))
            if (owner[b] >= 0 && owner[b] != owner[a] && rel_.less(a, b))
                arc(W + owner[a], W + owner[b], obj[owner[a]]->band != obj[owner[b]]->band ? 1 : 0);
    }
    for (int i = 0; i < N; ++i) d[i][i] = std::max(d[i][i], 0);
    for (int k = 0; k < N; ++k)
        for (int i = 0; i < N; ++i) {
            if (d[i][k] == NEG) continue;
            for (int j = 0; j < N; ++j)
                if (d[k][j] != NEG) d[i][j] = std::max(d[i][j], std::min(d[i][k] + d[k][j], N + 1));
        }
    for (int i = 0; i < N; ++i)
        if (d[i][i] > 0) return reject("group bounds are cyclic");

    // labelled nodes: group sentinels and pieces
    struct Label {
        int node;
        std::vector<int> groups;
        int var = -1;
    };
    std::vector<Label> labs;
    for (int i = 0; i < W; ++i) labs.push_back({i, {i}, -1});
    int vars = 0;
    std::vector<int> var_of(P, -1);
    for (int p = 0; p < P; ++p) {
        Label lb{W + p, {}, -1};
        for (int gi : obj[p]->options) {
            int g = bb_.gaps[gi].group;
            if (std::find(lb.groups.begin(), lb.groups.end(), g) == lb.groups.end()) lb.groups.push_back(g);
        }
        if (lb.groups.size() == 2) var_of[p] = lb.var = vars++;
        labs.push_back(lb);
    }
    std::vector<std::vector<int>> imp(2 * vars);
    bool dead = false;
    auto forbid = [&](int vu, int ou, int vv, int ov) {
        if (vu < 0 && vv < 0) {
            dead = true;
            return;
        }
        if (vu < 0) {
            imp[2 * vv + ov].push_back(2 * vv + (ov ^ 1));
            return;
        }
        if (vv < 0) {
            imp[2 * vu + ou].push_back(2 * vu + (ou ^ 1));
            return;
        }
        imp[2 * vu + ou].push_back(2 * vv + (ov ^ 1));
        imp[2 * vv + ov].push_back(2 * vu + (ou ^ 1));
    };
    for (auto& u : labs)
        for (auto& v : labs) {
            if (&u == &v) continue;
            int L = d[u.node][v.node];
            if (L == NEG) continue;
            for (int ou = 0; ou < static_cast<int>(u.groups.size()); ++ou)
                for (int ov = 0; ov < static_cast<int>(v.groups.size()); ++ov)
                    if (v.groups[ov] - u.groups[ou] < L) forbid(u.var, ou, v.var, ov);
        }
    // two pieces at one anchor never share a face, unless the anchor is open on that band
    auto open_anchor = [&](const Piece& p) {
        if (rel_.level(p.anchor) != 2) return false;
        for (int w : rel_.neighbors(p.anchor))
            if (bb_.on_backbone[w] && rel_.level(w) == p.band) return false;
        return true;
    };
    for (int p = 0; p < P; ++p)
        for (int q = p + 1; q < P; ++q) {
            auto &a = *obj[p], &b = *obj[q];
            if (a.anchor != b.anchor || a.band != b.band || open_anchor(a)) continue;
            bool pa = var_of[p] >= 0 || a.options.size() == 1, pb = var_of[q] >= 0 || b.options.size() == 1;
            if (!pa || !pb) continue;
            for (int oa = 0; oa < static_cast<int>(a.options.size()); ++oa)
                for (int ob = 0; ob < static_cast<int>(b.options.size()); ++ob)
                    if (a.options[oa] == b.options[ob]) forbid(var_of[p], oa, var_of[q], ob);
        }
    if (dead) return reject("group bounds unsatisfiable");
    int cnt = 0;
    auto comp = strong_components(imp, cnt);
    for (int v = 0; v < vars; ++v)
        if (comp[2 * v] == comp[2 * v + 1]) return reject("group bounds unsatisfiable");
    for (int p = 0; p < P; ++p) {
        if (var_of[p] < 0) continue;
        int v = var_of[p];
        int gi = comp[2 * v] > comp[2 * v + 1] ? obj[p]->options[0] : obj[p]->options[1];
        if (!place(rel_, *obj[p], bb_.gaps[gi])) return reject("group choice is cyclic");
        obj[p]->gap = gi;
    }

    // remaining pieces, anchor by anchor
    std::map<std::pair<int, int>, std::vector<int>> at;
    for (int p = 0; p < P; ++p) at[{obj[p]->anchor, obj[p]->band}].push_back(p);
    for (auto& [key, Q] : at) {
        int a = key.first;
        if (open_anchor(*obj[Q.front()])) {
            std::vector<std::pair<int, int>> choice;
            for (int p : Q)
                if (obj[p]->gap < 0) choice.push_back({p, obj[p]->options.front()});
            if (!choice.empty() && !try_place(choice)) return reject("piece fits no face");
            if (Q.size() == 2) {
                int p = Q[0], q = Q[1];
                for (int x : obj[p]->vertices)
                    if (rel_.level(x) == 2 && rel_.less(a, x)) std::swap(p, q);
                bool done = false;
                for (int round = 0; round < 2 && !done; ++round) {
                    ClosedConstraints trial = rel_;
                    bool good = true;
                    for (int x : obj[p]->vertices)
                        if (rel_.level(x) == 2) good = good && trial.add(x, a);
                    for (int x : obj[q]->vertices)
                        if (rel_.level(x) == 2) good = good && trial.add(a, x);
                    if (good) {
                        rel_ = std::move(trial);
                        done = true;
                    }
                    std::swap(p, q);
                }
                if (!done) return reject("pieces at an open anchor collide");
            }
            continue;
        }
        // enumerate face choices, left faces first, distinct faces per anchor
        std::vector<std::vector<int>> opts;
        for (int p : Q) opts.push_back(obj[p]->gap >= 0 ? std::vector<int>{obj[p]->gap} : obj[p]->options);
        bool done = false;
        std::vector<int> idx(Q.size(), 0);
        while (!done) {
            std::vector<std::pair<int, int>> choice;
            std::set<int> used;
            bool distinct = true;
            for (std::size_t i = 0; i < Q.size(); ++i) {
                int gi = opts[i][idx[i]];
                distinct = distinct && used.insert(gi).second;
                if (obj[Q[i]]->gap < 0) choice.push_back({Q[i], gi});
            }
            if (distinct && try_place(choice)) done = true;
            std::size_t i = 0;
            while (!done && i < Q.size() && ++idx[i] == static_cast<int>(opts[i].size())) idx[i++] = 0;
            if (!done && i == Q.size()) break;
        }
        if (!done) return reject("pieces at one anchor fit no faces");
    }

    // enclosed components in constraint order, leftmost admissible gap first
    int E = O - P;
    std::vector<std::pair<int, int>> arcs;
    for (int a = 0; a < rel_.size(); ++a) {
        if (owner[a] < P) continue;
        for (int b : rel_.on_level(rel_.level(a)))
            if (owner[b] >= P && owner[b] != owner[a] && rel_.less(a, b)) arcs.push_back({owner[a] - P, owner[b] - P});
    }
    std::vector<std::string> keys;
    for (int e = 0; e < E; ++e) {
        std::string k = ids_[obj[P + e]->vertices.front()];
        for (int x : obj[P + e]->vertices) k = std::min(k, ids_[x]);
        keys.push_back(k);
    }
    auto order = topo_sort(E, arcs, keys);
    if (!order) return reject("enclosed components are cyclic");
    for (int e : *order) {
        bool done = false;
        for (int gi : obj[P + e]->options)
            if (try_place({{P + e, gi}})) {
                done = true;
                break;
            }
        if (!done) return reject("enclosed component fits no gap");
    }
    return true;
}

bool Branch::arrange_gap(int gi) {
    const auto& g = bb_.gaps[gi];
    const auto& B = bb_.order[1];
    auto obj = objects();
    std::vector<std::vector<int>> sets;
    for (auto* p : obj)
        if (p->gap == gi) sets.push_back(p->vertices);
    int k = static_cast<int>(sets.size());
    for (int j = g.first_slot + 1; j <= g.last_slot; ++j) {
        int b = B[j], by = -1;
        for (int o = 0; o < k; ++o) {
            bool lo = false, hi = false;
            for (int x : sets[o]) {
                if (rel_.level(x) != 2) continue;
                lo = lo || rel_.less(x, b);
                hi = hi || rel_.less(b, x);
            }
            if (lo && hi) {
                if (by >= 0) return reject("backbone vertex inside two objects");
                by = o;
            }
        }
        if (by >= 0)
            sets[by].push_back(b);
        else
            sets.push_back({b});
    }
    int m = static_cast<int>(sets.size());
    std::vector<std::pair<int, int>> arcs;
    std::vector<std::string> keys;
    for (int i = 0; i < m; ++i) {
        std::string key = ids_[sets[i].front()];
        for (int x : sets[i]) key = std::min(key, ids_[x]);
        keys.push_back(key);
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            bool rel = false;
            for (int x : sets[i])
                for (int y : sets[j]) rel = rel || rel_.less(x, y);
            if (rel) arcs.push_back({i, j});
        }
    }
    auto order = topo_sort(m, arcs, keys);
    if (!order) return reject("gap contents are cyclic");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int x : sets[(*order)[i]])
                for (int y : sets[(*order)[j]])
                    if (rel_.level(x) == rel_.level(y) && !rel_.add(x, y)) return reject("gap arrangement is cyclic");
    return true;
}

bool Branch::orient(Piece& p) {
    std::vector<char> inside(rel_.size(), 0);
    std::vector<int> verts = p.vertices;
    if (p.anchor >= 0) verts.push_back(p.anchor);
    for (int x : verts) inside[x] = 1;
    auto cat = caterpillar_of(rel_, verts, inside, ids_);
    if (!cat) return reject("object is not a caterpillar");
    if (cat->spine.size() >= 2) {
        for (int round = 0; round < 2; ++round) {
            ClosedConstraints trial = rel_;
            bool good = true;
            for (auto [a, b] : spine_constraints(*cat)) good = good && trial.add(a, b);
            if (good) {
                rel_ = std::move(trial);
                break;
            }
            if (round == 1) return reject("caterpillar fits neither way");
            std::reverse(cat->spine.begin(), cat->spine.end());
            std::reverse(cat->leaves.begin(), cat->leaves.end());
        }
    }
    if (p.gap < 0) return true;
    return spread_leaves(p, bb_.gaps[p.gap]);
}

bool Branch::spread_leaves(Piece& p, const Gap& g) {
    std::vector<char> inside(rel_.size(), 0);
    std::vector<int> verts = p.vertices;
    if (p.anchor >= 0) verts.push_back(p.anchor);
    for (int x : verts) inside[x] = 1;
    auto cat = caterpillar_of(rel_, verts, inside, ids_);
    const auto& B = bb_.order[1];
    for (auto& S : cat->leaves) {
        if (S.empty()) continue;
        std::vector<int> nodes = S;
        if (rel_.level(S.front()) == 2)
            for (int j = g.first_slot; j <= g.last_slot + 1; ++j) {
                int b = B[j];
                if (std::find(nodes.begin(), nodes.end(), b) != nodes.end()) continue;
                for (int x : S)
                    if (!rel_.comparable(x, b)) {
                        nodes.push_back(b);
                        break;
                    }
            }
        if (!totalize(nodes)) return reject("leaf group has no order");
    }
    return true;
}

bool Branch::reinsert_leaves(Orders& orders) {
    const auto& G = g_.graph;
    for (auto [l, a] : leaves_) {
        int L = rel_.level(l), la = rel_.level(a);
        auto& O = orders[L - 1];
        const auto& A = orders[la - 1];
        std::vector<int> pos(rel_.size(), -1);
        for (int i = 0; i < static_cast<int>(O.size()); ++i) pos[O[i]] = i;
        std::vector<int> apos(rel_.size(), -1);
        for (int i = 0; i < static_cast<int>(A.size()); ++i) apos[A[i]] = i;
        int lo = 0, hi = static_cast<int>(O.size());
        for (int i = 0; i < static_cast<int>(O.size()); ++i) {
            if (rel_.less(O[i], l)) lo = i + 1;
            if (rel_.less(l, O[i])) hi = std::min(hi, i);
        }
        std::vector<std::pair<int, int>> band;  // (vertex on a's level, vertex on l's level)
        for (auto e : G.edges()) {
            if (!alive_[e.u] || !alive_[e.v]) continue;
            if (G.level(e.u) == la && G.level(e.v) == L) band.push_back({e.u, e.v});
            if (G.level(e.v) == la && G.level(e.u) == L) band.push_back({e.v, e.u});
        }
        int at = -1;
        for (int p = lo; p <= hi && at < 0; ++p) {
            bool clear = true;
            for (auto [x, y] : band) {
                if (x == a) continue;
                bool left = pos[y] < p;
                if ((apos[x] < apos[a] && !left) || (apos[x] > apos[a] && left)) {
                    clear = false;
                    break;
                }
            }
            if (clear) at = p;
        }
        if (at < 0) return reject("no crossing-free slot for a leaf");
        O.insert(O.begin() + at, l);
        alive_[l] = 1;
    }
    return true;
}

std::optional<Orders> Branch::finalize() {
    for (int gi = 0; gi < static_cast<int>(bb_.gaps.size()); ++gi)
        if (!arrange_gap(gi)) return std::nullopt;
    for (auto* p : objects())
        if (!orient(*p)) return std::nullopt;
    Orders orders(3);
    for (int l = 1; l <= 3; ++l) {
        std::vector<int> on;
        for (int v : rel_.on_level(l))
            if (alive_[v]) on.push_back(v);
        bool total = true;
        for (std::size_t i = 0; i < on.size() && total; ++i)
            for (std::size_t j = i + 1; j < on.size() && total; ++j) total = rel_.comparable(on[i], on[j]);
        if (!total && !totalize(on)) {
            reject("completion of level " + std::to_string(l) + " failed");
            return std::nullopt;
        }
        std::sort(on.begin(), on.end(), [&](int a, int b) { return rel_.less(a, b); });
        orders[l - 1] = on;
    }
    if (!reinsert_leaves(orders)) return std::nullopt;
    for (auto& lv : orders) lv.erase(std::remove_if(lv.begin(), lv.end(), [&](int v) { return v >= base_; }), lv.end());
    return orders;
}

std::optional<Orders> Branch::run() {
    if (!connect_hooks() || !orient_backbone() || !detach_and_prune() || !assign_gaps()) return std::nullopt;
    return finalize();
}

namespace {

std::optional<Orders> solve_scc(const ConstrainedLevelGraph& P, const Options& opt) {
    Context cx = make_context(P);
    const auto& G = P.graph;
    std::vector<int> mids;
    for (int v = 0; v < static_cast<int>(G.size()); ++v)
        if (G.level(v) == 2) mids.push_back(v);
    std::sort(mids.begin(), mids.end(), [&](int a, int b) { return G.id(a) < G.id(b); });
    std::vector<std::pair<int, int>> guesses;
    for (int s : mids)
        for (int t : mids) {
            if ((s == t) != (mids.size() == 1)) continue;
            bool ok = true;
            for (int x : mids) ok = ok && !cx.rel.less(x, s) && !cx.rel.less(t, x);
            if (ok) guesses.push_back({s, t});
        }
    auto attempt = [&](int s, int t, std::vector<std::string>& log) -> std::optional<Orders> {
        auto hs = hooks_in(cx, s, t);
        std::string tag = "s=" + G.id(s) + " t=" + G.id(t) + ": ";
        if (hs.empty()) log.push_back(tag + "hooks refuted");
        for (auto& h : hs) {
            Branch b(P, cx.rel, s, t, h);
            auto o = b.run();
            if (o && sound(P, *o)) return o;
            log.push_back(tag + (o ? "self-check failed" : b.reason()));
        }
        return std::nullopt;
    };
    int jobs = std::max(1, opt.jobs);
    for (std::size_t first = 0; first < guesses.size(); first += jobs) {
        std::size_t last = std::min(guesses.size(), first + jobs);
        std::vector<std::optional<Orders>> res(last - first);
        std::vector<std::vector<std::string>> logs(last - first);
        if (jobs == 1) {
            res[0] = attempt(guesses[first].first, guesses[first].second, logs[0]);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t i = first; i < last; ++i)
                pool.emplace_back([&, i] { res[i - first] = attempt(guesses[i].first, guesses[i].second, logs[i - first]); });
            for (auto& th : pool) th.join();
        }
        for (std::size_t i = 0; i < res.size(); ++i) {
            if (opt.trace)
                for (auto& line : logs[i]) opt.trace->push_back(line);
            if (res[i]) return res[i];
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<LevelEmbedding> solve(const ConstrainedLevelGraph& g, const Options& opt) {
    int h = g.graph.height;
    if (h > 3) throw Error(ErrorKind::UnsupportedHeight, "3-level solver called on height " + std::to_string(h));
    if (h <= 2) return clp2::solve(g);
    if (!close_constraints(g)) return std::nullopt;
    if (g.graph.edge_count() == 0) {
        auto o = clp2::sort_levels(g);
        if (!o) return std::nullopt;
        return clp2::from_orders(*o);
    }
    auto st = strip_isolated(g);
    auto pr = make_proper(st.instance);
    auto closed = close_constraints(pr.proper);
    if (!closed) return std::nullopt;
    auto P = with_closure(pr.proper, *closed);
    Orders all(3);
    for (auto& part : decompose_scc(P)) {
        auto o = solve_scc(part.instance, opt);
        if (!o) return std::nullopt;
        for (int l = 0; l < 3; ++l)
            for (int v : (*o)[l]) all[l].push_back(part.to_parent[v]);
    }
    auto emb = unsubdivide(st.instance, pr.map, clp2::from_orders(all));
    return reinsert_isolated(g, st, emb);
}

}  // namespace levelplan::clp3
