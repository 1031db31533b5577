#include <doctest.h>

#include "mcf/generate.hpp"
#include "mcf/residual.hpp"

using namespace mcf;

TEST_CASE("round_to returns the least multiple strictly above") {
    CHECK(round_to(3, 2) == 4);
    CHECK(round_to(4, 2) == 6);
    CHECK(round_to(-3, 2) == -2);
    CHECK(round_to(0, 2) == 2);
    CHECK(round_to(-4, 2) == -2);
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        Price z = static_cast<Price>(rng.below(1000)) + 1;
        Price y = rng.range(-100000, 100000);
        Price r = round_to(y, z);
        CHECK(r > y);
        CHECK(r % z == 0);
        CHECK(r - z <= y);
    }
}

TEST_CASE("edge pairing and structural invariants") {
    MultiGraph g(3);
    EdgeId e = g.add_edge(0, 1, 5);
    EdgeId f = g.add_edge(1, 2, -2);
    CHECK(MultiGraph::rev(MultiGraph::rev(e)) == e);
    CHECK(MultiGraph::rev(e) != e);
    CHECK(g.cost(MultiGraph::rev(e)) == -g.cost(e));
    CHECK(MultiGraph::is_original(e));
    CHECK(!MultiGraph::is_original(MultiGraph::rev(f)));
    CHECK(g.capacity(e) == 1);
    CHECK(g.capacity(MultiGraph::rev(e)) == 0);
    CHECK(g.tail(MultiGraph::rev(e)) == g.head(e));
}

TEST_CASE("reduced cost formula and telescoping") {
    MultiGraph g(2);
    EdgeId e = g.add_edge(0, 1, 5);
    Prices p{2, 0};
    CHECK(reduced_cost(g, e, p, 0) == 3);
    Prices zero{0, 0};
    CHECK(reduced_cost(g, e, zero, 0) == 5);
    // prices telescope around any cycle
    MultiGraph tri(3);
    tri.add_edge(0, 1, 4);
    tri.add_edge(1, 2, -1);
    tri.add_edge(2, 0, 2);
    Prices q{7, -3, 11};
    Price plain = 0, reduced = 0;
    for (EdgeId o = 0; o < tri.num_original(); ++o) {
        plain += tri.cost(2 * o);
        reduced += reduced_cost(tri, 2 * o, q, 0);
    }
    CHECK(plain == reduced);
}

TEST_CASE("is_eps_optimal on a single negative edge") {
    MultiGraph g(2);
    g.add_edge(0, 1, -3);
    FlowState f(g);
    Prices p{0, 0};
    CHECK(is_eps_optimal(g, f, p, 0, 3));
    CHECK(!is_eps_optimal(g, f, p, 0, 2));
}

TEST_CASE("any circulation is C-optimal with zero prices") {
    Rng rng(11);
    for (int it = 0; it < 50; ++it) {
        InstanceSpec spec;
        spec.kind = GenKind::random_multigraph;
        spec.n = 2 + static_cast<int>(rng.below(6));
        spec.m = static_cast<std::int64_t>(rng.below(12));
        spec.seed = rng.next();
        Instance inst = generate(spec);
        const MultiGraph& g = inst.graph;
        FlowState f(g);
        Prices p(static_cast<size_t>(g.num_vertices()), 0);
        CHECK(is_eps_optimal(g, f, p, 0, g.max_abs_cost()));
    }
}

TEST_CASE("send_flow semantics") {
    MultiGraph g(3);
    EdgeId ab = g.add_edge(0, 1, 1);
    EdgeId bc = g.add_edge(1, 2, 1);
    FlowState f(g);
    // manufacture excess at 0 and deficit at 2 by sending 2->...: use a
    // helper edge instead: send along the path and check excess updates
    f.send(std::vector<EdgeId>{ab, bc});
    CHECK(f.excess(0) == -1);
    CHECK(f.excess(1) == 0);
    CHECK(f.excess(2) == 1);
    CHECK(f.psi() == 1);
    f.verify();
    // sending along rev(e) then e restores the original flow
    f.send_edge(MultiGraph::rev(ab));
    CHECK(f.flow(ab) == 0);
    f.send_edge(ab);
    CHECK(f.flow(ab) == 1);
    // empty set is the identity
    std::int64_t before = f.psi();
    f.send(std::vector<EdgeId>{});
    CHECK(f.psi() == before);
    // saturation violation rejected
    CHECK_THROWS_AS(f.send_edge(ab), invariant_error);
    f.verify();
}

TEST_CASE("flow antisymmetry holds after random operations") {
    Rng rng(13);
    InstanceSpec spec;
    spec.kind = GenKind::random_multigraph;
    spec.n = 6;
    spec.m = 12;
    spec.seed = 99;
    Instance inst = generate(spec);
    const MultiGraph& g = inst.graph;
    FlowState f(g);
    for (int it = 0; it < 200; ++it) {
        EdgeId e = static_cast<EdgeId>(rng.below(static_cast<std::uint64_t>(g.num_edge_ids())));
        if (f.residual(e)) f.send_edge(e);
    }
    f.verify();
}

TEST_CASE("cost scale parameters") {
    MultiGraph g(5);
    g.add_edge(0, 1, 7);
    g.add_edge(1, 2, -10);
    CostScale cs = CostScale::make(g);
    CHECK(cs.unit == (Price{1} << cs.shift));
    CHECK(cs.unit >= 4 * (5 + 1));
    CHECK(cs.unit < 8 * (5 + 1));
    CHECK(cs.max_cost == 10);
    // largest power of two below the scaled max cost
    CHECK(cs.initial_eps <= 10 * cs.unit);
    CHECK(2 * cs.initial_eps > 10 * cs.unit);
    // termination encodes eps <= 1/(n+1)
    CHECK(cs.done(cs.unit / 6, 5));
    CHECK(!cs.done(cs.unit / 4, 5));
}

TEST_CASE("approximate costs: rounding window and reverse bound") {
    Rng rng(17);
    for (int it = 0; it < 300; ++it) {
        InstanceSpec spec;
        spec.kind = GenKind::random_multigraph;
        spec.n = 2 + static_cast<int>(rng.below(6));
        spec.m = 1 + static_cast<std::int64_t>(rng.below(10));
        spec.seed = rng.next();
        Instance inst = generate(spec);
        const MultiGraph& g = inst.graph;
        CostScale cs = CostScale::make(g);
        FlowState f(g);
        Prices p0(static_cast<size_t>(g.num_vertices()), 0);
        Price eps = cs.initial_eps > 0 ? cs.initial_eps : 4;
        for (; eps >= 2; eps /= 2) {
            ApproxView view(g, f, p0, cs.shift, eps);
            for (EdgeId e = 0; e < g.num_edge_ids(); ++e) {
                Price c = view.reduced_cost(e), cp = view.c_prime(e);
                CHECK(cp > c);
                CHECK(cp <= c + eps);
                CHECK(cp % (eps / 2) == 0);
                CHECK(view.c_prime(e) + view.c_prime(MultiGraph::rev(e)) > eps);
            }
            if (rng.coin()) break;
        }
    }
}

TEST_CASE("extended view: auxiliary edge costs") {
    MultiGraph g(3);
    EdgeId ab = g.add_edge(0, 1, 2);
    g.add_edge(1, 2, 3);
    CostScale cs = CostScale::make(g);
    Prices p0(3, 0);
    FlowState f(g);
    // X empty: no source edges anywhere
    ApproxView idle(g, f, p0, cs.shift, cs.initial_eps);
    for (VertexId v = 0; v < 3; ++v) {
        CHECK(!idle.source_edge(v));
        CHECK(idle.sink_edge_cost(v) == idle.big_cost());
    }
    // after sending on ab: head gains excess, tail becomes deficit
    f.send_edge(ab);
    ApproxView view(g, f, p0, cs.shift, cs.initial_eps);
    CHECK(view.source_edge(1));
    CHECK(!view.source_edge(0));
    CHECK(view.sink_edge_cost(0) == 0);
    CHECK(view.sink_edge_cost(1) == view.big_cost());
    // M dominates the sum of approximate costs
    Price sum = 0;
    for (EdgeId e = 0; e < g.num_edge_ids(); ++e) {
        Price c = view.c_prime(e);
        sum += c < 0 ? -c : c;
    }
    CHECK(view.big_cost() == sum + view.eps());
}

TEST_CASE("overflow guard rejects oversized cost domains") {
    MultiGraph g(1 << 20);
    g.add_edge(0, 1, std::int64_t{1} << 40);
    for (int i = 0; i < 4; ++i) g.add_edge(i + 1, i + 2, 1);
    CHECK_THROWS_AS(CostScale::make(g), overflow_error);
}
