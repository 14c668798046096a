#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "levelplan/closure.hpp"
#include "levelplan/clp3.hpp"
#include "levelplan/oracle.hpp"
#include "levelplan/random.hpp"

using namespace levelplan;

namespace {

using PairSet = std::set<std::pair<int, int>>;

PairSet as_set(const std::vector<Constraint>& cs) {
    PairSet s;
    for (auto c : cs) s.insert({c.before, c.after});
    return s;
}

// naive fixpoint of both rules; nullopt on a cycle
std::optional<PairSet> naive_closure(const ConstrainedLevelGraph& g) {
    const auto& G = g.graph;
    PairSet s = as_set(g.constraints);
    for (bool grew = true; grew;) {
        grew = false;
        PairSet add;
        for (auto [a, b] : s) {
            for (auto [c, d] : s)
                if (b == c) add.insert({a, d});
            for (int x : G.neighbors(a))
                for (int y : G.neighbors(b))
                    if (x != y && G.level(x) == G.level(y)) add.insert({x, y});
        }
        for (auto p : add) grew = s.insert(p).second || grew;
        for (auto [a, b] : s)
            if (a == b || s.count({b, a})) return std::nullopt;
    }
    return s;
}

std::set<std::string> labels(const LevelGraph& g, const std::vector<int>& vs) {
    std::set<std::string> out;
    for (int v : vs) out.insert(g.id(v));
    return out;
}

}  // namespace

TEST_CASE("closure: fixture derives exactly the forced pairs") {
    auto g = fx::clg({{"b1", 1}, {"b2", 1}, {"m1", 2}, {"m2", 2}, {"m3", 2}, {"t1", 3}, {"t2", 3}},
                     {{"b1", "m1"}, {"b2", "m2"}, {"m1", "t1"}, {"m2", "t2"}, {"m3", "t2"}}, {{"b1", "b2"}});
    auto c = close_constraints(g);
    REQUIRE(c);
    std::set<std::pair<std::string, std::string>> got;
    for (auto k : c->pairs()) got.insert({g.graph.id(k.before), g.graph.id(k.after)});
    std::set<std::pair<std::string, std::string>> want{
        {"b1", "b2"}, {"m1", "m2"}, {"m1", "m3"}, {"t1", "t2"}};
    CHECK(got == want);
}

TEST_CASE("closure: crossing pattern is a cycle") {
    auto g = fx::clg({{"a", 1}, {"b", 1}, {"x", 2}, {"y", 2}}, {{"a", "x"}, {"b", "y"}}, {{"a", "b"}, {"y", "x"}});
    CHECK_FALSE(close_constraints(g));
    auto h = fx::clg({{"a", 1}, {"b", 1}}, {}, {{"a", "b"}, {"b", "a"}});
    CHECK_FALSE(close_constraints(h));
}

TEST_CASE("closure: edges added later propagate; dropped edges keep pairs") {
    auto g = fx::clg({{"a", 1}, {"b", 1}, {"x", 2}, {"y", 2}}, {{"a", "x"}}, {{"a", "b"}});
    auto c = close_constraints(g);
    REQUIRE(c);
    int a = 0, b = 1, x = 2, y = 3;
    CHECK_FALSE(c->less(x, y));
    REQUIRE(c->add_edge(b, y));
    CHECK(c->less(x, y));
    c->remove_edge(b, y);
    CHECK(c->less(x, y));
    CHECK(c->neighbors(b).empty());
    int z = c->add_vertex(2);
    CHECK(c->add_edge(a, z));
    bool both = c->add(y, z) && c->add(z, x);
    CHECK_FALSE(both);
    CHECK_FALSE(c->ok());
}

TEST_CASE("closure: matches a naive fixpoint, idempotent, order-insensitive") {
    std::mt19937_64 rng(31);
    RandomSpec spec;
    spec.max_vertices = 9;
    int cyclic = 0;
    for (int it = 0; it < 200; ++it) {
        spec.edge_density = 0.2 + 0.05 * (it % 5);
        spec.constraint_density = 0.1 + 0.05 * (it % 4);
        auto g = random_clp(rng, spec);
        auto c = close_constraints(g);
        auto n = naive_closure(g);
        REQUIRE(c.has_value() == n.has_value());
        if (!c) {
            ++cyclic;
            continue;
        }
        auto pairs = as_set(c->pairs());
        CHECK(pairs == *n);
        auto again = close_constraints(with_closure(g, *c));
        REQUIRE(again);
        CHECK(as_set(again->pairs()) == pairs);
        auto shuffled = g;
        std::shuffle(shuffled.constraints.begin(), shuffled.constraints.end(), rng);
        auto c2 = close_constraints(shuffled);
        REQUIRE(c2);
        CHECK(as_set(c2->pairs()) == pairs);
    }
    CHECK(cyclic > 0);
    CHECK(cyclic < 200);
}

TEST_CASE("decompose_scc: nested component joins its host, predecessor comes first") {
    auto g = fx::clg({{"a1", 2}, {"a2", 3}, {"b1", 2}, {"b2", 3}, {"b3", 2}, {"c1", 2}, {"c2", 1}},
                     {{"a1", "a2"}, {"b1", "b2"}, {"b3", "b2"}, {"c2", "c1"}},
                     {{"a1", "b1"}, {"b1", "c1"}, {"c1", "b3"}});
    auto parts = clp3::decompose_scc(g);
    REQUIRE(parts.size() == 2);
    CHECK(labels(g.graph, parts[0].to_parent) == std::set<std::string>{"a1", "a2"});
    CHECK(labels(g.graph, parts[1].to_parent) == std::set<std::string>{"b1", "b2", "b3", "c1", "c2"});
    auto e = clp3::solve(g);
    REQUIRE(e);
    CHECK(verify_drawing(g, *e).empty());
    CHECK(fx::ids(g.graph, *e, 2) == std::vector<std::string>{"a1", "b1", "c1", "b3"});
}

TEST_CASE("decompose_scc: constraints between parts point forward") {
    std::mt19937_64 rng(5);
    ForestSpec spec;
    for (int it = 0; it < 100; ++it) {
        auto g = random_forest_clp(rng, spec);
        auto parts = clp3::decompose_scc(g);
        std::vector<int> part_of(g.graph.size(), -1);
        for (int p = 0; p < static_cast<int>(parts.size()); ++p)
            for (int v : parts[p].to_parent) part_of[v] = p;
        for (auto c : g.constraints) CHECK(part_of[c.before] <= part_of[c.after]);
    }
}

TEST_CASE("resolve_hooks: component tucked under another") {
    auto raw = fx::clg({{"m1", 2}, {"t1", 3}, {"m3", 2}, {"b1", 1}, {"n1", 2}, {"n2", 2}, {"n3", 2}, {"c1", 1}},
                       {{"m1", "t1"}, {"m3", "t1"}, {"b1", "m1"}, {"c1", "n1"}, {"c1", "n2"}, {"c1", "n3"}},
                       {{"m1", "n1"}, {"n2", "m3"}, {"m3", "n3"}});
    auto closed = close_constraints(raw);
    REQUIRE(closed);
    auto g = with_closure(raw, *closed);
    auto id = [&](const char* s) { return g.graph.index_of(s); };
    auto hs = clp3::resolve_hooks(g, id("m1"), id("n3"));
    REQUIRE(hs.size() == 1);
    auto& h = hs.front();
    auto comps = components(g);
    REQUIRE(h.chain.size() == 2);
    CHECK(h.chain[0] == comps.comp_of[id("m1")]);
    CHECK(h.chain[1] == comps.comp_of[id("n3")]);
    CHECK(h.anchor_right[0] == id("t1"));
    CHECK(h.anchor_left[0] == id("c1"));
    // n1 is free against m3, so only n2 hooks back and the piece is the single edge c1-n2
    CHECK(h.spine_end_right[0] == id("n2"));
    CHECK(h.spine_end_left[0] == id("m3"));
    // a guess whose ends share no hook path is refuted
    auto none = clp3::resolve_hooks(g, id("n3"), id("m1"));
    CHECK(none.empty());

    clp3::Branch b(g, *closed, id("m1"), id("n3"), h);
    auto o = b.run();
    REQUIRE(o);
    auto e = clp3::solve(raw);
    REQUIRE(e);
    CHECK(verify_drawing(raw, *e).empty());
    auto mid = fx::ids(raw.graph, *e, 2);
    REQUIRE(mid.size() == 5);
    auto at = [&](const char* v) { return std::find(mid.begin(), mid.end(), v) - mid.begin(); };
    CHECK(mid.front() == "m1");
    CHECK(at("n2") < at("m3"));
    CHECK(at("m3") < at("n3"));
}

TEST_CASE("backbone is the union of simple s-t paths") {
    std::mt19937_64 rng(17);
    RandomSpec spec;
    spec.max_vertices = 10;
    spec.max_width = 4;
    spec.long_edge_share = 0;
    spec.constraint_density = 0;
    int checked = 0;
    for (int it = 0; it < 600; ++it) {
        spec.edge_density = 0.35 + 0.05 * (it % 5);
        auto raw = random_clp(rng, spec);
        auto comps = components(strip_isolated(raw).instance);
        auto st = strip_isolated(raw);
        // largest component with two middle vertices
        int best = -1;
        for (int c = 0; c < static_cast<int>(comps.members.size()); ++c) {
            int mids = 0;
            for (int v : comps.members[c]) mids += st.instance.graph.level(v) == 2;
            if (mids >= 2 && (best < 0 || comps.members[c].size() > comps.members[best].size())) best = c;
        }
        if (best < 0) continue;
        auto sub = induced(st.instance, comps.members[best]).instance;
        auto closed = close_constraints(sub);
        if (!closed) continue;
        std::vector<int> mids;
        for (int v = 0; v < static_cast<int>(sub.graph.size()); ++v)
            if (sub.graph.level(v) == 2) mids.push_back(v);
        int s = mids[rng() % mids.size()], t = s;
        while (t == s) t = mids[rng() % mids.size()];
        clp3::Branch b(sub, *closed, s, t, clp3::HookStructure{{0}, {}, {}, {}, {}});
        if (!b.connect_hooks() || !b.orient_backbone()) continue;
        // every vertex on some simple s-t path
        int n = static_cast<int>(sub.graph.size());
        std::vector<char> on(n, 0), used(n, 0);
        std::vector<int> path;
        std::function<void(int)> dfs = [&](int v) {
            path.push_back(v);
            used[v] = 1;
            if (v == t) {
                for (int x : path) on[x] = 1;
            } else {
                for (int w : sub.graph.neighbors(v))
                    if (!used[w]) dfs(w);
            }
            used[v] = 0;
            path.pop_back();
        };
        dfs(s);
        for (int v = 0; v < n; ++v) CHECK(static_cast<bool>(b.backbone().on_backbone[v]) == static_cast<bool>(on[v]));
        ++checked;
    }
    CHECK(checked >= 100);
}

TEST_CASE("agrees with brute_clp on random height-3 instances") {
    std::mt19937_64 rng(2024);
    RandomSpec spec;
    spec.max_vertices = 10;
    spec.max_width = 4;
    ForestSpec fspec;
    int yes = 0, no = 0;
    for (int it = 0; it < 500; ++it) {
        ConstrainedLevelGraph g;
        if (it % 5 < 3) {
            spec.edge_density = 0.15 + 0.05 * (it % 7);
            spec.constraint_density = 0.08 * (it % 6);
            g = random_clp(rng, spec);
        } else {
            fspec.trees = 2 + it % 3;
            fspec.max_tree = 4 + it % 2;
            fspec.constraints = 3 + it % 4;
            g = random_forest_clp(rng, fspec);
        }
        std::optional<LevelEmbedding> o;
        try {
            o = brute_clp(g);
        } catch (const Error&) {
            continue;
        }
        auto e = clp3::solve(g);
        REQUIRE(e.has_value() == o.has_value());
        if (e) {
            ++yes;
            CHECK(verify_drawing(g, *e).empty());
        } else {
            ++no;
        }
    }
    CHECK(yes > 100);
    CHECK(no > 50);
}

TEST_CASE("parallel guesses give the same drawing") {
    std::mt19937_64 rng(77);
    ForestSpec fspec;
    for (int it = 0; it < 40; ++it) {
        auto g = random_forest_clp(rng, fspec);
        clp3::Options one, four;
        four.jobs = 4;
        auto a = clp3::solve(g, one), b = clp3::solve(g, four);
        REQUIRE(a.has_value() == b.has_value());
        if (a)
            for (int l = 1; l <= 3; ++l) CHECK(a->vertex_order(l) == b->vertex_order(l));
    }
}

TEST_CASE("trace explains refuted guesses") {
    std::mt19937_64 rng(78);
    RandomSpec spec;
    spec.max_vertices = 10;
    spec.max_width = 4;
    spec.edge_density = 0.45;
    spec.constraint_density = 0.1;
    int explained = 0;
    for (int it = 0; it < 300 && explained == 0; ++it) {
        auto g = random_clp(rng, spec);
        std::vector<std::string> trace;
        clp3::Options opt;
        opt.trace = &trace;
        if (!clp3::solve(g, opt)) explained += !trace.empty();
    }
    CHECK(explained > 0);
    // crossing forced by the constraints alone is caught before any guess
    auto g = fx::clg({{"a", 1}, {"b", 1}, {"x", 2}, {"y", 2}, {"z", 3}}, {{"a", "y"}, {"b", "x"}, {"x", "z"}, {"y", "z"}},
                     {{"a", "b"}, {"x", "y"}});
    std::vector<std::string> trace;
    clp3::Options opt;
    opt.trace = &trace;
    CHECK_FALSE(clp3::solve(g, opt));
    CHECK(trace.empty());
}

TEST_CASE("height limits") {
    auto tall = fx::clg({{"a", 1}, {"b", 4}}, {{"a", "b"}});
    CHECK_THROWS_AS(clp3::solve(tall), Error);
    auto low = fx::clg({{"a", 1}, {"b", 2}}, {{"a", "b"}});
    auto e = clp3::solve(low);
    REQUIRE(e);
    CHECK(verify_drawing(low, *e).empty());
}
