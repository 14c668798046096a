#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "levelplan/oracle.hpp"
#include "levelplan/random.hpp"

using namespace levelplan;

TEST_CASE("verify_drawing basics") {
    auto g = fx::clg({{"a", 1}, {"b", 1}, {"c", 2}, {"d", 2}}, {{"a", "d"}, {"b", "c"}}, {{"a", "b"}});
    LevelEmbedding crossing;
    crossing.levels = {{{Item::vertex, 0}, {Item::vertex, 1}}, {{Item::vertex, 2}, {Item::vertex, 3}}};
    auto v = verify_drawing(g, crossing);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::EdgeCrossing);

    LevelEmbedding swapped;
    swapped.levels = {{{Item::vertex, 1}, {Item::vertex, 0}}, {{Item::vertex, 2}, {Item::vertex, 3}}};
    auto w = verify_drawing(g, swapped);
    REQUIRE(w.size() == 1);
    CHECK(w[0].kind == Violation::ConstraintViolated);

    LevelEmbedding missing;
    missing.levels = {{{Item::vertex, 0}}, {{Item::vertex, 2}, {Item::vertex, 3}}};
    CHECK(verify_drawing(g, missing).front().kind == Violation::StructureMismatch);
}

TEST_CASE("shared endpoints never cross") {
    auto g = fx::clg({{"a", 1}, {"c", 2}, {"d", 2}}, {{"a", "d"}, {"a", "c"}});
    LevelEmbedding e;
    e.levels = {{{Item::vertex, 0}}, {{Item::vertex, 2}, {Item::vertex, 1}}};
    CHECK(verify_drawing(g, e).empty());
}

TEST_CASE("crossing symmetry") {
    auto g = fx::clg({{"a", 1}, {"b", 1}, {"c", 2}, {"d", 2}}, {{"b", "c"}, {"a", "d"}});
    LevelEmbedding e;
    e.levels = {{{Item::vertex, 0}, {Item::vertex, 1}}, {{Item::vertex, 2}, {Item::vertex, 3}}};
    CHECK(verify_drawing(g, e).size() == 1);
}

TEST_CASE("brute_clp small cases") {
    auto one = fx::clg({{"a", 1}, {"b", 1}}, {}, {{"b", "a"}});
    auto e = brute_clp(one);
    REQUIRE(e);
    CHECK(fx::ids(one.graph, *e, 1) == std::vector<std::string>{"b", "a"});
    auto cyc = fx::clg({{"a", 1}, {"b", 1}}, {}, {{"a", "b"}, {"b", "a"}});
    CHECK_FALSE(brute_clp(cyc));
}

TEST_CASE("brute_olp small cases") {
    auto single = fx::olg({{"u", 1, 1}, {"v", 2, 1}}, {{"u", "v"}});
    CHECK(brute_olp(single));
    auto inter = fx::olg({{"a", 1, 1}, {"b", 1, 2}, {"c", 2, 1}, {"d", 2, 2}}, {{"a", "d"}, {"b", "c"}});
    CHECK_FALSE(brute_olp(inter));
}

TEST_CASE("oracle output verifies and verdict is stable under vertex order") {
    std::mt19937_64 rng(17);
    RandomSpec spec;
    spec.height = 3;
    for (int it = 0; it < 150; ++it) {
        auto g = random_clp(rng, spec);
        auto e = brute_clp(g);
        if (e) CHECK(verify_drawing(g, *e).empty());
        // same instance with vertices inserted in a shuffled order
        std::vector<int> perm(g.graph.size());
        for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
        std::shuffle(perm.begin(), perm.end(), rng);
        ConstrainedLevelGraph h;
        std::vector<int> to(perm.size());
        for (int v : perm) to[v] = h.graph.add_vertex(g.graph.id(v), g.graph.level(v));
        for (auto ed : g.graph.edges()) h.graph.add_edge(to[ed.u], to[ed.v]);
        for (auto c : g.constraints) h.constraints.push_back({to[c.before], to[c.after]});
        CHECK(brute_clp(h).has_value() == e.has_value());
    }
}

TEST_CASE("oracle cap") {
    // level 2 order is forced to (a,b), level 1 needs d before c: infeasible only after enumerating all x orders
    ConstrainedLevelGraph big;
    for (int k = 0; k < 11; ++k) big.graph.add_vertex("x" + std::to_string(k), 1);
    int a = big.graph.add_vertex("a", 2), b = big.graph.add_vertex("b", 2);
    int c = big.graph.add_vertex("c", 1), d = big.graph.add_vertex("d", 1);
    big.graph.add_edge(c, b);
    big.graph.add_edge(d, a);
    big.constraints.push_back({a, b});
    big.constraints.push_back({c, d});
    CHECK_THROWS_AS(brute_clp(big, {1000}), Error);
}
