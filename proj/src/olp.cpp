#include "levelplan/olp.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <unordered_map>

namespace levelplan::olp {

UsedEdgeSet UsedEdgeSet::empty(int h) {
    UsedEdgeSet u;
    u.bits.assign((static_cast<std::size_t>(h) * h + 63) / 64, 0);
    return u;
}

static std::size_t bit_index(int h, int a, int b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::size_t>(a - 1) * h + (b - 1);
}

bool UsedEdgeSet::has(int h, int a, int b) const {
    auto i = bit_index(h, a, b);
    return (bits[i / 64] >> (i % 64)) & 1U;
}

void UsedEdgeSet::set(int h, int a, int b, bool on) {
    auto i = bit_index(h, a, b);
    if (on)
        bits[i / 64] |= std::uint64_t{1} << (i % 64);
    else
        bits[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

bool UsedEdgeSet::none() const {
    return std::all_of(bits.begin(), bits.end(), [](auto w) { return w == 0; });
}

Limits Limits::from_env() {
    Limits l;
    if (const char* v = std::getenv("LEVELPLAN_MEMO_LIMIT")) l.memo_limit = std::strtoull(v, nullptr, 10);
    return l;
}

Solver::Solver(const OrderedLevelGraph& g, Limits limits) : g_(g), limits_(limits), h_(g.graph.height) {
    order_ = g.orders();
}

int Solver::vertex_at(int l, int p) const {
    if (p % 2 == 0) return -1;
    return order_[l - 1][(p + 1) / 2 - 1];
}

Side Solver::classify(int v, const Separation& s) const {
    int p = s[g_.graph.level(v) - 1];
    int odd = 2 * g_.rank[v] - 1;
    if (p == odd) return Side::OnSeparation;
    return odd < p ? Side::LeftOf : Side::RightOf;
}

int Solver::pred_along(const Separation& s, int l) const {
    for (int k = l - 1; k >= 1; --k)
        if (s[k - 1] % 2 == 1) return vertex_at(k, s[k - 1]);
    return -1;
}

int Solver::succ_along(const Separation& s, int l) const {
    for (int k = l + 1; k <= h_; ++k)
        if (s[k - 1] % 2 == 1) return vertex_at(k, s[k - 1]);
    return -1;
}

bool Solver::uses_edge(const Separation& s, int e) const {
    auto [u, v] = g_.graph.edge(e);
    if (classify(u, s) != Side::OnSeparation || classify(v, s) != Side::OnSeparation) return false;
    for (int l = g_.graph.level(u) + 1; l < g_.graph.level(v); ++l)
        if (s[l - 1] % 2 == 1) return false;
    return true;
}

std::pair<Separation, UsedEdgeSet> Solver::step_back(const Separation& s, const UsedEdgeSet& U, int j) const {
    if (s[j - 1] < 1 || U.bottom) throw Error(ErrorKind::SequenceInvalid, "step_back precondition violated");
    const auto& G = g_.graph;
    Separation t = s;
    --t[j - 1];
    int p = s[j - 1];
    UsedEdgeSet R = U;
    if (p % 2 == 1) {
        int v = vertex_at(j, p);
        int pred = pred_along(s, j), succ = succ_along(s, j);
        for (int b = 1; b <= h_; ++b) {
            if (b == j || !U.has(h_, j, b)) continue;
            int w = vertex_at(b, s[b - 1]);
            if (w != pred && w != succ) return {t, UsedEdgeSet::make_bottom()};
            R.set(h_, j, b, false);
        }
        (void)v;
        return {t, R};
    }
    int v = vertex_at(j, p - 1);
    for (int w : G.neighbors(v))
        if (classify(w, s) == Side::RightOf) return {t, UsedEdgeSet::make_bottom()};
    int pred = pred_along(t, j), succ = succ_along(t, j);
    if (pred >= 0 && succ >= 0) R.set(h_, G.level(pred), G.level(succ), false);
    for (int w : G.neighbors(v))
        if (classify(w, t) == Side::OnSeparation) R.set(h_, j, G.level(w), true);
    return {t, R};
}

namespace {

std::string key_of(const Separation& s, const UsedEdgeSet& U) {
    std::string k;
    k.reserve(s.size() * 2 + U.bits.size() * 8);
    for (int p : s) {
        k.push_back(static_cast<char>(p & 0xff));
        k.push_back(static_cast<char>((p >> 8) & 0xff));
    }
    for (auto w : U.bits) k.append(reinterpret_cast<const char*>(&w), sizeof w);
    return k;
}

struct Entry {
    signed char value;  // 0 false, 1 true
    signed char j;      // back-link level for true entries (0 for the base)
};

struct Frame {
    Separation s;
    UsedEdgeSet U;
    std::string key;
    int next = 1;  // next level to probe; re-probed once its child is decided
};

}  // namespace

std::optional<SweepingSequence> Solver::solve() {
    std::unordered_map<std::string, Entry> memo;
    Separation root(h_);
    for (int l = 1; l <= h_; ++l) root[l - 1] = 2 * width(l);
    auto zero = [](const Separation& s) { return std::all_of(s.begin(), s.end(), [](int p) { return p == 0; }); };
    auto store = [&](const std::string& k, Entry e) {
        memo[k] = e;
        if (limits_.memo_limit && memo.size() > limits_.memo_limit)
            throw Error(ErrorKind::ResourceLimit, "OLP memo table exceeded " + std::to_string(limits_.memo_limit) + " entries");
    };

    std::vector<Frame> stack;
    stack.push_back({root, UsedEdgeSet::empty(h_), key_of(root, UsedEdgeSet::empty(h_))});
    if (zero(root)) store(stack.back().key, {1, 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (memo.count(f.key)) {
            stack.pop_back();
            continue;
        }
        bool pushed = false;
        for (; f.next <= h_; ++f.next) {
            int j = f.next;
            if (f.s[j - 1] < 1) continue;
            auto [t, V] = step_back(f.s, f.U, j);
            if (V.bottom) continue;
            auto k = key_of(t, V);
            auto it = memo.find(k);
            if (it == memo.end() && zero(t)) {
                store(k, {static_cast<signed char>(V.none() ? 1 : 0), 0});
                it = memo.find(k);
            }
            if (it != memo.end()) {
                if (it->second.value == 1) {
                    store(f.key, {1, static_cast<signed char>(j)});
                    break;
                }
                continue;
            }
            stack.push_back({t, V, k});
            pushed = true;
            break;
        }
        if (pushed) continue;
        Frame& g = stack.back();
        if (!memo.count(g.key)) store(g.key, {0, 0});
        stack.pop_back();
    }
    stats_.memo_entries = memo.size();
    stats_.true_entries = static_cast<std::size_t>(
        std::count_if(memo.begin(), memo.end(), [](auto& kv) { return kv.second.value == 1; }));

    auto rootkey = key_of(root, UsedEdgeSet::empty(h_));
    if (memo.at(rootkey).value != 1) return std::nullopt;
    SweepingSequence seq;
    Separation s = root;
    UsedEdgeSet U = UsedEdgeSet::empty(h_);
    seq.steps.push_back(s);
    while (!zero(s)) {
        int j = memo.at(key_of(s, U)).j;
        auto [t, V] = step_back(s, U, j);
        s = t;
        U = V;
        seq.steps.push_back(s);
    }
    std::reverse(seq.steps.begin(), seq.steps.end());
    seq.nice = seq.exhaustive = true;
    return seq;
}

std::optional<SweepingSequence> solve(const OrderedLevelGraph& g, Limits limits, Stats* stats) {
    Solver s(g, limits);
    auto r = s.solve();
    if (stats) *stats = s.stats();
    return r;
}

LevelEmbedding realize(const OrderedLevelGraph& g, SweepingSequence seq) {
    const auto& G = g.graph;
    int h = G.height;
    Solver S(g);
    auto& st = seq.steps;
    for (auto& s : st)
        if (static_cast<int>(s.size()) != h) throw Error(ErrorKind::SequenceInvalid, "separation of wrong length");
    if (st.empty() || std::any_of(st[0].begin(), st[0].end(), [](int p) { return p != 0; }))
        st.insert(st.begin(), Separation(h, 0));
    for (std::size_t i = 0; i < st.size(); ++i)
        for (int l = 1; l <= h; ++l) {
            if (st[i][l - 1] < 0 || st[i][l - 1] > 2 * S.width(l))
                throw Error(ErrorKind::SequenceInvalid, "position out of range");
            if (i > 0 && st[i][l - 1] < st[i - 1][l - 1])
                throw Error(ErrorKind::SequenceInvalid, "sequence is not monotone");
        }

    int n = static_cast<int>(G.size()), m = static_cast<int>(G.edge_count());
    const long long unset = -1;
    std::vector<long long> vkey(n, unset), ekey(m, unset);
    for (std::size_t i = 0; i < st.size(); ++i) {
        const auto& s = st[i];
        for (int l = 1; l <= h; ++l) {
            int p = s[l - 1];
            int lo = i > 0 ? st[i - 1][l - 1] : 0;
            // vertices passed over without ever lying on a separation
            for (int q = lo + 1; q < p; q += 1)
                if (q % 2 == 1) {
                    int v = S.vertex_at(l, q);
                    if (vkey[v] == unset) vkey[v] = 2 * static_cast<long long>(i) - 1;
                }
            if (p % 2 == 1) {
                int v = S.vertex_at(l, p);
                if (vkey[v] == unset) vkey[v] = 2 * static_cast<long long>(i);
            }
        }
        for (int e = 0; e < m; ++e)
            if (ekey[e] == unset && S.uses_edge(s, e)) ekey[e] = 2 * static_cast<long long>(i);
    }
    for (int e = 0; e < m; ++e)
        if (ekey[e] == unset)
            throw Error(ErrorKind::SequenceInvalid,
                        "edge " + G.id(G.edge(e).u) + "-" + G.id(G.edge(e).v) + " is never used");
    for (int v = 0; v < n; ++v)
        if (vkey[v] == unset) throw Error(ErrorKind::SequenceInvalid, "vertex " + G.id(v) + " is never swept");

    // (key, tiebreak, item)
    std::vector<std::vector<std::tuple<long long, int, Item>>> rows(h);
    for (int v = 0; v < n; ++v) rows[G.level(v) - 1].push_back({vkey[v], g.rank[v], Item{Item::vertex, v}});
    for (int e = 0; e < m; ++e)
        for (int l = G.level(G.edge(e).u) + 1; l < G.level(G.edge(e).v); ++l)
            rows[l - 1].push_back({ekey[e], 0, Item{Item::edge, e}});
    LevelEmbedding emb;
    emb.levels.resize(h);
    for (int l = 0; l < h; ++l) {
        std::sort(rows[l].begin(), rows[l].end(), [](auto& a, auto& b) {
            return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b) : std::get<1>(a) < std::get<1>(b);
        });
        for (auto& r : rows[l]) emb.levels[l].push_back(std::get<2>(r));
    }
    return emb;
}

std::optional<LevelEmbedding> solve_and_draw(const OrderedLevelGraph& g, Limits limits) {
    auto seq = solve(g, limits);
    if (!seq) return std::nullopt;
    return realize(g, *seq);
}

}  // namespace levelplan::olp
