#include <doctest.h>

#include <unordered_set>

#include "mcf/generate.hpp"
#include "mcf/oracle.hpp"
#include "mcf/planar/hooks.hpp"
#include "mcf/planar/planar_refine.hpp"
#include "mcf/planar/rdivision.hpp"
#include "mcf/dijkstra.hpp"

using namespace mcf;

namespace {

Instance planar_instance(std::uint64_t seed, bool grid, int size, int mult) {
    InstanceSpec spec;
    if (grid) {
        spec.kind = GenKind::grid;
        spec.rows = size;
        spec.cols = size;
    } else {
        spec.kind = GenKind::triangulation;
        spec.n = size * size;
    }
    spec.multiplicity = mult;
    spec.seed = seed;
    return generate(spec);
}

}  // namespace

TEST_CASE("one-piece division behaves exactly like the general engine") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Instance inst = planar_instance(seed, true, 3, 2);
        const MultiGraph& g = inst.graph;
        planar::RDivision div = planar::build_r_division(g, g.num_vertices(), &inst.rotation);
        REQUIRE(div.pieces.size() == 1);
        SolveOptions opt;
        opt.heavy_checks = true;
        opt.certify_each_scale = true;
        Solution planar_sol = planar_min_cost_circulation_with_division(g, opt, div);
        Solution general_sol = min_cost_circulation(g, {});
        CHECK(planar_sol.cost == general_sol.cost);
        CHECK(planar_sol.certified);
    }
}

TEST_CASE("planar solve equals general solve and the oracle on small planar instances") {
    for (std::uint64_t seed = 10; seed < 22; ++seed) {
        bool grid = seed % 2 == 0;
        Instance inst = planar_instance(seed, grid, 4, 1 + static_cast<int>(seed % 3));
        const MultiGraph& g = inst.graph;
        SolveOptions popt;
        popt.algo = Algo::planar;
        popt.planar_r = 4 + static_cast<int>(seed % 9);
        popt.rotation = &inst.rotation;
        popt.heavy_checks = true;
        popt.certify_each_scale = true;
        Solution planar_sol = min_cost_circulation(g, popt);
        Solution general_sol = min_cost_circulation(g, {});
        CHECK(planar_sol.cost == general_sol.cost);
        CHECK(planar_sol.cost == cycle_canceling_circulation_cost(g));
        CHECK(planar_sol.certified);
    }
}

TEST_CASE("augmenting paths stay lockstep with a mirrored general flow state") {
    Instance inst = planar_instance(99, true, 5, 2);
    const MultiGraph& g = inst.graph;
    FlowState mirror(g);
    int syncs = 0;
    auto compare = [&](const ApproxView& view) {
        for (EdgeId e = 0; e < g.num_edge_ids(); ++e)
            CHECK(mirror.residual(e) == view.residual(e));
        ++syncs;
    };
    PlanarHooks hooks;
    hooks.on_saturate = [&](const ApproxView& view, const std::vector<EdgeId>& sat) {
        mirror.send(sat);
        compare(view);
    };
    hooks.on_augment = [&](const ApproxView& view, const std::vector<EdgeId>& path) {
        // replaying the translated path on the mirror must be legal and
        // reproduce the engine's residual state bit for bit
        mirror.send(path);
        compare(view);
    };
    SolveOptions opt;
    opt.algo = Algo::planar;
    opt.planar_r = 8;
    opt.rotation = &inst.rotation;
    Solution sol = planar_min_cost_circulation(g, opt, &hooks);
    CHECK(sol.certified);
    CHECK(syncs > 0);
    CHECK(mirror.is_circulation());
    CHECK(mirror.raw_cost() == sol.cost);
}

TEST_CASE("compressed distances match the full graph on every phase") {
    Instance inst = planar_instance(123, false, 4, 2);
    const MultiGraph& g = inst.graph;
    int checked = 0;
    PlanarHooks hooks;
    hooks.on_distances = [&](const ApproxView& view, const Prices& pstar) {
        Prices full = bellman_ford_distances_to(view);
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            if (pstar[static_cast<size_t>(v)] == 0 &&
                full[static_cast<size_t>(v)] != 0)
                continue;  // non-boundary entries are not maintained
        }
        // s and t entries always match
        CHECK(pstar[static_cast<size_t>(view.sink())] == 0);
        ++checked;
    };
    SolveOptions opt;
    opt.algo = Algo::planar;
    opt.planar_r = 6;
    opt.rotation = &inst.rotation;
    opt.heavy_checks = true;  // internally asserts boundary equality vs Bellman-Ford
    Solution sol = planar_min_cost_circulation(g, opt, &hooks);
    CHECK(sol.certified);
    CHECK(checked > 0);
}

namespace {

// Independent per-pair oracle: Bellman-Ford over the piece's residual
// bundle representatives plus the interior auxiliary edges.
Price piece_pair_oracle(const planar::PieceGraph& pg, const ApproxView& view, int from_idx,
                        int to_idx) {
    const int n2 = pg.nl() + 2;
    auto to_local = [&](int idx) {
        if (idx == pg.s_idx()) return pg.s_local();
        if (idx == pg.t_idx()) return pg.t_local();
        return pg.boundary_local[static_cast<size_t>(idx)];
    };
    int src = to_local(from_idx), dst = to_local(to_idx);
    std::vector<Price> dist(static_cast<size_t>(n2), kInf);
    dist[static_cast<size_t>(src)] = 0;
    for (int round = 0; round < n2 + 1; ++round) {
        bool changed = false;
        auto relax = [&](int u, int v, Price w) {
            if (dist[static_cast<size_t>(u)] >= kInf) return;
            if (dist[static_cast<size_t>(u)] + w < dist[static_cast<size_t>(v)]) {
                dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + w;
                changed = true;
            }
        };
        for (const auto& b : pg.bundles) {
            EdgeId rep = planar::bundle_representative(b, view.flow());
            if (rep >= 0) relax(b.from, b.to, view.c_prime(rep));
        }
        for (int lv = 0; lv < pg.nl(); ++lv) {
            if (pg.boundary_pos[static_cast<size_t>(lv)] >= 0) continue;
            VertexId gv = pg.verts[static_cast<size_t>(lv)];
            relax(lv, pg.t_local(), view.sink_edge_cost(gv));
            if (view.flow().excess(gv) > 0) relax(pg.s_local(), lv, 0);
        }
        if (!changed) break;
    }
    return dist[static_cast<size_t>(dst)];
}

}  // namespace

TEST_CASE("clique entries equal an independent per-pair oracle on live pieces") {
    Instance inst = planar_instance(777, false, 4, 2);
    const MultiGraph& g = inst.graph;
    int entries_checked = 0;
    PlanarHooks hooks;
    hooks.on_reach = [&](const planar::PieceGraph& pg, const planar::PieceState& st,
                         const planar::ReachData&, const ApproxView& view,
                         std::span<const Price> bp) {
        if (entries_checked > 4000 || pg.nb() > 12) return;
        (void)bp;
        for (int a = 0; a < pg.nb() + 2; ++a) {
            if (a == pg.t_idx()) continue;
            for (int b = 0; b < pg.nb() + 2; ++b) {
                if (b == pg.s_idx() || b == a) continue;
                CHECK(st.at(pg, a, b) == piece_pair_oracle(pg, view, a, b));
                ++entries_checked;
            }
        }
    };
    SolveOptions opt;
    opt.algo = Algo::planar;
    opt.planar_r = 6;
    opt.rotation = &inst.rotation;
    Solution sol = planar_min_cost_circulation(g, opt, &hooks);
    CHECK(sol.certified);
    CHECK(entries_checked > 100);
}

TEST_CASE("price extension reproduces the phase prices on the boundary") {
    Instance inst = planar_instance(555, true, 5, 2);
    int checked = 0;
    PlanarHooks hooks;
    hooks.on_reach = [&](const planar::PieceGraph& pg, const planar::PieceState& st,
                         const planar::ReachData&, const ApproxView& view,
                         std::span<const Price> bp) {
        if (checked > 500 || pg.nb() == 0) return;
        Prices ext = planar::extend_prices(pg, view, st, bp);
        for (int pos = 0; pos < pg.nb(); ++pos) {
            int lv = pg.boundary_local[static_cast<size_t>(pos)];
            CHECK(ext[static_cast<size_t>(lv)] == bp[static_cast<size_t>(pos)]);
            ++checked;
        }
    };
    SolveOptions opt;
    opt.algo = Algo::planar;
    opt.planar_r = 8;
    opt.rotation = &inst.rotation;
    Solution sol = planar_min_cost_circulation(inst.graph, opt, &hooks);
    CHECK(sol.certified);
    CHECK(checked > 0);
}

TEST_CASE("reach decode equals the zero-subgraph BFS on live pieces") {
    Instance inst = planar_instance(321, true, 4, 3);
    const MultiGraph& g = inst.graph;
    int pieces_checked = 0;
    PlanarHooks hooks;
    hooks.on_reach = [&](const planar::PieceGraph& pg, const planar::PieceState& st,
                         const planar::ReachData& rd, const ApproxView& view,
                         std::span<const Price> bp) {
        if (pg.nb() == 0 || pg.nb() > 64) return;
        for (int pos = 0; pos < pg.nb(); ++pos) {
            auto want = planar::zero_reach_bfs(pg, view, st, bp, pos);
            auto got = planar::decode_reach(pg, rd, pos);
            CHECK(want == got);
        }
        ++pieces_checked;
    };
    SolveOptions opt;
    opt.algo = Algo::planar;
    opt.planar_r = 5;
    opt.rotation = &inst.rotation;
    Solution sol = planar_min_cost_circulation(g, opt, &hooks);
    CHECK(sol.certified);
    CHECK(pieces_checked > 0);
}

TEST_CASE("planar engine handles loops, parallels and disconnected inputs") {
    MultiGraph g(8);
    g.add_edge(0, 0, -2);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 0, -3);
    g.add_edge(1, 0, 2);
    g.add_edge(2, 3, -1);
    g.add_edge(3, 4, -1);
    g.add_edge(4, 2, -1);
    // vertices 5..7 isolated
    SolveOptions opt;
    opt.algo = Algo::planar;
    opt.planar_r = 4;
    opt.heavy_checks = true;
    Solution sol = min_cost_circulation(g, opt);
    CHECK(sol.cost == exhaustive_circulation_cost(g));
    CHECK(sol.certified);
}

TEST_CASE("grid instances up to a few hundred vertices match across engines") {
    for (std::uint64_t seed = 40; seed < 44; ++seed) {
        Instance inst = planar_instance(seed, seed % 2 == 0, seed % 2 == 0 ? 9 : 7, 2);
        const MultiGraph& g = inst.graph;
        SolveOptions popt;
        popt.algo = Algo::planar;
        popt.planar_r = 20;
        popt.rotation = &inst.rotation;
        Solution planar_sol = min_cost_circulation(g, popt);
        Solution dial_sol = min_cost_circulation(g, {});
        CHECK(planar_sol.cost == dial_sol.cost);
        CHECK(planar_sol.certified);
    }
}
