#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "levelplan/clp2.hpp"
#include "levelplan/io.hpp"
#include "levelplan/oracle.hpp"
#include "levelplan/random.hpp"

using namespace levelplan;

TEST_CASE("validate: empty instance") {
    auto inst = validate_instance(json::parse(R"({"height":0,"vertices":[],"edges":[],"constraints":[]})"));
    REQUIRE(std::holds_alternative<ConstrainedLevelGraph>(inst));
    CHECK(std::get<ConstrainedLevelGraph>(inst).graph.size() == 0);
}

TEST_CASE("validate: ranked path with chords is OLP") {
    auto raw = json::parse(R"({"height":4,
        "vertices":[{"id":"v1","level":1,"rank":1},{"id":"v2","level":2,"rank":1},
                    {"id":"v3","level":3,"rank":1},{"id":"v4","level":4,"rank":1}],
        "edges":[["v1","v2"],["v2","v3"],["v3","v4"],["v1","v3"],["v2","v4"]]})");
    auto inst = validate_instance(raw);
    REQUIRE(std::holds_alternative<OrderedLevelGraph>(inst));
    CHECK(std::get<OrderedLevelGraph>(inst).graph.edge_count() == 5);
}

TEST_CASE("validate: error kinds") {
    auto kind_of = [](const char* text, bool strict = false) {
        try {
            validate_instance(json::parse(text), strict);
        } catch (const Error& e) {
            return e.kind();
        }
        FAIL("no error");
        return ErrorKind::MalformedInput;
    };
    CHECK(kind_of(R"({"height":2,"vertices":[{"id":"a","level":2},{"id":"b","level":2}],"edges":[["a","b"]]})") ==
          ErrorKind::SameLevelEdge);
    CHECK(kind_of(R"({"height":2,"vertices":[{"id":"a","level":2},{"id":"b","level":1}],"edges":[["a","b"]]})") ==
          ErrorKind::EdgeNotUpward);
    CHECK(kind_of(R"({"height":1,"vertices":[{"id":"a","level":1}],"edges":[["a","zz"]]})") == ErrorKind::UnknownVertex);
    CHECK(kind_of(R"({"height":1,"vertices":[{"id":"a","level":1,"rank":1},{"id":"b","level":1,"rank":1}]})") ==
          ErrorKind::DuplicateRank);
    CHECK(kind_of(R"({"height":2,"vertices":[{"id":"a","level":1},{"id":"b","level":2}],
                     "constraints":[{"level":1,"before":"a","after":"b"}]})") == ErrorKind::ConstraintAcrossLevels);
    CHECK(kind_of(R"({"height":2,"vertices":[{"id":"a","level":1}]})", true) == ErrorKind::EmptyLevel);
}

TEST_CASE("make_proper") {
    SUBCASE("proper input is unchanged") {
        auto g = fx::clg({{"a", 1}, {"b", 2}}, {{"a", "b"}});
        auto r = make_proper(g);
        CHECK(r.map.empty());
        CHECK(r.proper.graph.size() == 2);
    }
    SUBCASE("one long edge") {
        auto g = fx::clg({{"a", 1}, {"b", 3}, {"c", 2}}, {{"a", "b"}});
        auto r = make_proper(g);
        REQUIRE(r.map.chain[0].size() == 1);
        int w = r.map.chain[0][0];
        CHECK(r.proper.graph.level(w) == 2);
        CHECK(r.proper.graph.edge_count() == 2);
        CHECK(r.proper.graph.find_edge(0, w) >= 0);
        CHECK(r.proper.graph.find_edge(w, 1) >= 0);
    }
    SUBCASE("k disjoint long edges") {
        ConstrainedLevelGraph g;
        for (int k = 0; k < 4; ++k) {
            int a = g.graph.add_vertex("a" + std::to_string(k), 1);
            int b = g.graph.add_vertex("b" + std::to_string(k), 3);
            g.graph.add_edge(a, b);
        }
        g.graph.add_vertex("m", 2);
        auto r = make_proper(g);
        CHECK(r.proper.graph.size() == 9 + 4);
        CHECK(r.proper.constraints.empty());
    }
}

TEST_CASE("make_proper preserves feasibility") {
    std::mt19937_64 rng(11);
    RandomSpec spec;
    spec.height = 3;
    spec.max_vertices = 7;
    spec.long_edge_share = 0.8;
    for (int it = 0; it < 60; ++it) {
        auto g = random_clp(rng, spec);
        auto p = make_proper(g);
        CHECK(brute_clp(g).has_value() == brute_clp(p.proper).has_value());
    }
}

TEST_CASE("strip and reinsert isolated vertices") {
    SUBCASE("unconstrained isolated vertex goes leftmost") {
        auto g = fx::clg({{"a", 1}, {"b", 2}, {"z", 1}}, {{"a", "b"}});
        auto s = strip_isolated(g);
        CHECK(s.removed.size() == 1);
        auto emb = clp2::from_orders({{0}, {1}});
        auto full = reinsert_isolated(g, s, emb);
        CHECK(fx::ids(g.graph, full, 1) == std::vector<std::string>{"z", "a"});
    }
    SUBCASE("constrained isolated vertex goes between") {
        auto g = fx::clg({{"u", 1}, {"v", 1}, {"w", 1}, {"x", 2}, {"y", 2}}, {{"u", "x"}, {"v", "y"}},
                         {{"u", "w"}, {"w", "v"}});
        auto s = strip_isolated(g);
        // stripped constraints are closed through w
        REQUIRE(s.instance.constraints.size() == 1);
        auto emb = clp2::solve(s.instance);
        REQUIRE(emb);
        auto full = reinsert_isolated(g, s, *emb);
        CHECK(fx::ids(g.graph, full, 1) == std::vector<std::string>{"u", "w", "v"});
        CHECK(verify_drawing(g, full).empty());
    }
    SUBCASE("random strip-solve-reinsert is verifier clean") {
        std::mt19937_64 rng(5);
        RandomSpec spec;
        spec.height = 2;
        spec.edge_density = 0.25;
        int feasible = 0;
        for (int it = 0; it < 100; ++it) {
            auto g = random_clp(rng, spec);
            auto s = strip_isolated(g);
            auto emb = brute_clp(s.instance);
            if (!emb) continue;
            ++feasible;
            CHECK(verify_drawing(g, reinsert_isolated(g, s, *emb)).empty());
        }
        CHECK(feasible > 20);
    }
}

TEST_CASE("components") {
    auto g = fx::clg({{"a", 1}, {"b", 2}, {"c", 1}, {"d", 2}}, {{"a", "b"}, {"c", "d"}}, {{"a", "c"}});
    auto c = components(g);
    CHECK(c.members.size() == 2);
    CHECK(c.cross.size() == 1);
    auto one = components(fx::clg({{"a", 1}, {"b", 2}, {"c", 1}}, {{"a", "b"}, {"c", "b"}}));
    CHECK(one.members.size() == 1);
}

TEST_CASE("json round trip") {
    std::mt19937_64 rng(3);
    RandomSpec spec;
    for (int it = 0; it < 20; ++it) {
        auto c = random_clp(rng, spec);
        auto j = to_json(c);
        CHECK(to_json(validate_instance(j)) == j);
        auto o = random_olp(rng, spec);
        auto k = to_json(o);
        CHECK(to_json(validate_instance(k)) == k);
        if (auto emb = brute_clp(c)) {
            auto e = embedding_to_json(c.graph, *emb);
            CHECK(embedding_to_json(c.graph, embedding_from_json(c.graph, e)) == e);
        }
    }
}

TEST_CASE("coordinates follow the sequences") {
    auto g = fx::clg({{"a", 1}, {"b", 3}, {"c", 2}}, {{"a", "b"}});
    LevelEmbedding emb;
    emb.levels = {{{Item::vertex, 0}}, {{Item::edge, 0}, {Item::vertex, 2}}, {{Item::vertex, 1}}};
    auto c = synthesize_coordinates(g.graph, emb);
    CHECK(c.vertex[2].x == 1);
    REQUIRE(c.polyline[0].size() == 3);
    CHECK(c.polyline[0][1].y == 2);
    CHECK(c.polyline[0][1].x == 0);
    auto svg = to_svg(g.graph, emb);
    CHECK(svg.find("<polyline") != std::string::npos);
}
