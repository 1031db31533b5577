#include <doctest.h>

#include "mcf/dimacs.hpp"
#include "mcf/generate.hpp"
#include "mcf/solver.hpp"

using namespace mcf;

TEST_CASE("parse a small instance") {
    std::string text =
        "c two-vertex example\n"
        "p mcf 2 2\n"
        "a 1 2 2\n"
        "a 2 1 -5\n";
    Instance inst = parse_instance(text);
    CHECK(inst.graph.num_vertices() == 2);
    CHECK(inst.graph.num_original() == 2);
    CHECK(inst.graph.cost(0) == 2);
    CHECK(inst.graph.cost(2) == -5);
    CHECK(inst.graph.tail(2) == 1);
}

TEST_CASE("empty arc section gives isolated vertices") {
    Instance inst = parse_instance("p mcf 5 0\n");
    CHECK(inst.graph.num_vertices() == 5);
    CHECK(inst.graph.num_original() == 0);
    Solution sol = min_cost_circulation(inst.graph);
    CHECK(sol.cost == 0);
}

TEST_CASE("parse errors carry line positions") {
    CHECK_THROWS_WITH_AS(parse_instance("p mcf 2 1\na 1 3 4\n"),
                         doctest::Contains("line 2"), parse_error);
    CHECK_THROWS_AS(parse_instance("a 1 2 3\n"), parse_error);
    CHECK_THROWS_AS(parse_instance("p mcf 2 2\na 1 2 1\n"), parse_error);  // count mismatch
    CHECK_THROWS_AS(parse_instance("p mcf 2 1\na 1 2 x\n"), parse_error);
    CHECK_THROWS_AS(parse_instance("p mcf 2 1\nq 1 2 3\n"), parse_error);
    CHECK_THROWS_AS(parse_instance(""), parse_error);
}

TEST_CASE("serialize then parse is structurally the identity") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        InstanceSpec spec;
        spec.kind = seed % 2 ? GenKind::grid : GenKind::random_multigraph;
        spec.rows = 3;
        spec.cols = 4;
        spec.n = 7;
        spec.m = 15;
        spec.seed = seed;
        Instance inst = generate(spec);
        Instance back = parse_instance(serialize_instance(inst));
        CHECK(back.graph.num_vertices() == inst.graph.num_vertices());
        REQUIRE(back.graph.num_original() == inst.graph.num_original());
        for (EdgeId e = 0; e < inst.graph.num_edge_ids(); ++e) {
            CHECK(back.graph.tail(e) == inst.graph.tail(e));
            CHECK(back.graph.head(e) == inst.graph.head(e));
            CHECK(back.graph.cost(e) == inst.graph.cost(e));
        }
        CHECK(back.rotation == inst.rotation);
        // and the text round-trips byte-identically
        CHECK(serialize_instance(back) == serialize_instance(inst));
    }
}

TEST_CASE("solution files round-trip and verify") {
    InstanceSpec spec;
    spec.kind = GenKind::random_multigraph;
    spec.n = 6;
    spec.m = 12;
    spec.seed = 3;
    Instance inst = generate(spec);
    Solution sol = min_cost_circulation(inst.graph);
    Solution back = parse_solution(serialize_solution(sol));
    CHECK(back.cost == sol.cost);
    CHECK(back.flow == sol.flow);
    CHECK(back.prices == sol.prices);
    std::string why;
    CHECK(certify(back, inst.graph, &why));
    // a flipped flow bit is caught
    if (!back.flow.empty()) {
        back.flow[0] ^= 1;
        CHECK(!certify(back, inst.graph, &why));
    }
}
