#include <doctest.h>

#include "mcf/generate.hpp"
#include "mcf/planar/rdivision.hpp"

using namespace mcf;
using namespace mcf::planar;

TEST_CASE("grid division validates at several piece sizes") {
    InstanceSpec spec;
    spec.kind = GenKind::grid;
    spec.rows = 4;
    spec.cols = 4;
    spec.seed = 1;
    Instance inst = generate(spec);
    for (int r : {4, 8, 16}) {
        RDivision div = build_r_division(inst.graph, r, &inst.rotation);
        auto report = validate_r_division(inst.graph, div);
        CHECK(!report.empty());
    }
}

TEST_CASE("single triangle with r = n is one piece with empty boundary") {
    MultiGraph g(3);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(2, 0, 1);
    RDivision div = build_r_division(g, 3);
    validate_r_division(g, div);
    CHECK(div.pieces.size() == 1);
    CHECK(div.pieces[0].boundary.empty());
    CHECK(div.pieces[0].verts.size() == 3);
}

TEST_CASE("K5 input is rejected with the Kuratowski flag") {
    MultiGraph g(5);
    for (VertexId u = 0; u < 5; ++u)
        for (VertexId v = u + 1; v < 5; ++v) g.add_edge(u, v, 1);
    CHECK_THROWS_AS(build_r_division(g, 4), nonplanar_error);
}

TEST_CASE("divisions cover larger grids and triangulations") {
    Rng rng(77);
    for (int it = 0; it < 8; ++it) {
        InstanceSpec spec;
        if (it % 2 == 0) {
            spec.kind = GenKind::grid;
            spec.rows = 5 + static_cast<int>(rng.below(10));
            spec.cols = 5 + static_cast<int>(rng.below(10));
        } else {
            spec.kind = GenKind::triangulation;
            spec.n = 30 + static_cast<int>(rng.below(200));
        }
        spec.multiplicity = 1 + static_cast<int>(rng.below(3));
        spec.seed = rng.next();
        Instance inst = generate(spec);
        int n = inst.graph.num_vertices();
        int r = 4 + static_cast<int>(rng.below(40));
        r = std::min(r, n);
        RDivision div = build_r_division(inst.graph, r, &inst.rotation);
        validate_r_division(inst.graph, div);
        // some pieces should expose the single-hole fast path on these
        // instances when the division is nontrivial
        if (div.pieces.size() > 1) {
            int single = 0;
            for (const auto& piece : div.pieces) single += piece.single_hole;
            CHECK(single >= 1);
        }
    }
}

TEST_CASE("multigraphs with loops and parallels divide cleanly") {
    MultiGraph g(6);
    g.add_edge(0, 0, -3);   // loop
    g.add_edge(0, 1, 2);
    g.add_edge(0, 1, -1);   // parallel
    g.add_edge(1, 0, 4);    // anti-parallel
    g.add_edge(1, 2, 1);
    g.add_edge(2, 3, 1);
    g.add_edge(3, 4, 1);
    g.add_edge(4, 5, 1);
    g.add_edge(5, 0, 1);
    RDivision div = build_r_division(g, 3);
    validate_r_division(g, div);
    // loops have no support edge but their vertex is covered
    bool covered = !div.pieces_of[0].empty();
    CHECK(covered);
}

TEST_CASE("isolated vertices land in orphan pieces") {
    MultiGraph g(10);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(2, 0, 1);
    RDivision div = build_r_division(g, 4);
    validate_r_division(g, div);
    for (VertexId v = 3; v < 10; ++v) CHECK(!div.pieces_of[static_cast<size_t>(v)].empty());
}

TEST_CASE("default piece size clamps sensibly") {
    CHECK(default_piece_size(0, 0) == 1);
    CHECK(default_piece_size(16, 24) >= 4);
    CHECK(default_piece_size(400, 2400) >= 4);
    CHECK(default_piece_size(400, 2400) <= 400);
    CHECK(default_piece_size(3, 3) == 3);
}
