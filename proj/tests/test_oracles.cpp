#include <doctest.h>

#include "mcf/dimacs.hpp"
#include "mcf/generate.hpp"
#include "mcf/oracle.hpp"

using namespace mcf;

TEST_CASE("exhaustive oracle basics") {
    MultiGraph empty(3);
    CHECK(exhaustive_circulation_cost(empty) == 0);

    MultiGraph tri(3);
    tri.add_edge(0, 1, -1);
    tri.add_edge(1, 2, -1);
    tri.add_edge(2, 0, -1);
    CHECK(exhaustive_circulation_cost(tri) == -3);

    MultiGraph two(2);
    two.add_edge(0, 1, 2);
    two.add_edge(1, 0, -5);
    CHECK(exhaustive_circulation_cost(two) == -3);

    MultiGraph loops(2);
    loops.add_edge(0, 0, -7);
    loops.add_edge(1, 1, 3);
    CHECK(exhaustive_circulation_cost(loops) == -7);
}

TEST_CASE("cycle canceling agrees with exhaustive on tiny instances") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        InstanceSpec spec;
        spec.kind = GenKind::random_multigraph;
        spec.n = 2 + static_cast<int>(seed % 7);
        spec.m = static_cast<std::int64_t>(seed % 13);
        spec.seed = seed * 77 + 1;
        Instance inst = generate(spec);
        CHECK(cycle_canceling_circulation_cost(inst.graph) ==
              exhaustive_circulation_cost(inst.graph));
    }
}

TEST_CASE("cycle canceling handles an all-positive graph") {
    MultiGraph g(4);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 2);
    g.add_edge(2, 0, 3);
    CHECK(cycle_canceling_circulation_cost(g) == 0);
}

TEST_CASE("oracle and generator parameter validation") {
    MultiGraph big(30);
    for (int i = 0; i < 21; ++i) big.add_edge(i, i + 1, 1);
    CHECK_THROWS_AS(exhaustive_circulation_cost(big), invariant_error);

    InstanceSpec bad;
    bad.kind = GenKind::random_multigraph;
    bad.n = 5;
    bad.m = 3;
    bad.cost_min = 5;
    bad.cost_max = -5;  // empty range
    CHECK_THROWS_AS(generate(bad), invariant_error);
    InstanceSpec tiny;
    tiny.kind = GenKind::triangulation;
    tiny.n = 2;  // below the minimum triangle
    CHECK_THROWS_AS(generate(tiny), invariant_error);
}

TEST_CASE("generators are pure functions of their spec") {
    InstanceSpec spec;
    spec.kind = GenKind::triangulation;
    spec.n = 30;
    spec.multiplicity = 2;
    spec.seed = 123;
    Instance a = generate(spec);
    Instance b = generate(spec);
    CHECK(serialize_instance(a) == serialize_instance(b));

    spec.seed = 124;
    Instance c = generate(spec);
    CHECK(serialize_instance(a) != serialize_instance(c));
}

TEST_CASE("grid generator shape") {
    InstanceSpec spec;
    spec.kind = GenKind::grid;
    spec.rows = 4;
    spec.cols = 4;
    spec.seed = 9;
    Instance inst = generate(spec);
    CHECK(inst.graph.num_vertices() == 16);
    CHECK(inst.graph.num_original() == 24);  // 2 * 4 * 3
    CHECK(!inst.rotation.empty());
}

TEST_CASE("triangulation generator satisfies the Euler bound") {
    for (int n : {3, 4, 10, 50}) {
        InstanceSpec spec;
        spec.kind = GenKind::triangulation;
        spec.n = n;
        spec.seed = 17;
        Instance inst = generate(spec);
        CHECK(inst.graph.num_original() == 3 * n - 6);
        // every support adjacency appears exactly once per multiplicity
        CHECK(!inst.rotation.empty());
        size_t degree_sum = 0;
        for (const auto& nbrs : inst.rotation) degree_sum += nbrs.size();
        CHECK(degree_sum == 2 * static_cast<size_t>(inst.graph.num_original()));
    }
}
