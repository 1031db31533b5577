// Acceptance suite: runs every gate at its stated tolerance and prints one
// pass/fail line per criterion. Exit status is nonzero when a gating
// criterion fails. --report <path> writes the scaling-trend records.

#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "mcf/dijkstra.hpp"
#include "mcf/generate.hpp"
#include "mcf/oracle.hpp"
#include "mcf/planar/hooks.hpp"
#include "mcf/planar/planar_refine.hpp"
#include "mcf/planar/rdivision.hpp"
#include "mcf/planar/smawk.hpp"
#include "mcf/solver.hpp"

using namespace mcf;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared instrumentation accumulated across the solve corpora.
struct Stats {
    std::int64_t phases = 0;
    std::int64_t solves = 0;
    std::int64_t certified = 0;
    double max_phase_ratio = 0;      // phases / (8 sqrt(m) + 2)
    double max_edge_ratio = 0;       // path edges / (4m + 6m(1 + ln m))
    void absorb(const Solution& sol, int m) {
        ++solves;
        certified += sol.certified;
        double phase_bound = 8.0 * std::sqrt(static_cast<double>(std::max(m, 1))) + 2.0;
        double edge_bound =
            4.0 * m + 6.0 * m * (1.0 + std::log(std::max(1.0, static_cast<double>(m))));
        for (const auto& sc : sol.scales) {
            phases += sc.phases;
            max_phase_ratio = std::max(max_phase_ratio, sc.phases / phase_bound);
            if (m > 0)
                max_edge_ratio =
                    std::max(max_edge_ratio, static_cast<double>(sc.path_edges) / edge_bound);
        }
    }
};

Stats g_stats;

// Forward Bellman-Ford distances from src over the extended view (residual
// approximate edges plus the v->t auxiliaries); oracle for the compressed
// pair-distance checks.
Prices forward_bf(const ApproxView& view, VertexId src) {
    const MultiGraph& g = view.graph();
    const int n2 = view.num_vertices();
    Prices dist(static_cast<size_t>(n2), kInf);
    dist[static_cast<size_t>(src)] = 0;
    for (int round = 0; round < n2; ++round) {
        bool changed = false;
        for (EdgeId e = 0; e < g.num_edge_ids(); ++e) {
            if (!view.residual(e)) continue;
            VertexId u = g.tail(e), v = g.head(e);
            if (dist[static_cast<size_t>(u)] >= kInf) continue;
            Price nd = dist[static_cast<size_t>(u)] + view.c_prime(e);
            if (nd < dist[static_cast<size_t>(v)]) {
                dist[static_cast<size_t>(v)] = nd;
                changed = true;
            }
        }
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            if (dist[static_cast<size_t>(v)] >= kInf) continue;
            Price nd = dist[static_cast<size_t>(v)] + view.sink_edge_cost(v);
            if (nd < dist[static_cast<size_t>(view.sink())]) {
                dist[static_cast<size_t>(view.sink())] = nd;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return dist;
}

Outcome criterion_1() {
    auto t0 = std::chrono::steady_clock::now();
    int count = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        InstanceSpec spec;
        spec.kind = GenKind::random_multigraph;
        spec.n = 2 + static_cast<int>(seed % 7);
        spec.m = static_cast<std::int64_t>(seed % 15);
        spec.cost_min = -10;
        spec.cost_max = 10;
        spec.seed = 0x10000 + seed;
        Instance inst = generate(spec);
        std::int64_t want = exhaustive_circulation_cost(inst.graph);
        for (Algo algo : {Algo::dial, Algo::general}) {
            SolveOptions opt;
            opt.algo = algo;
            opt.certify_each_scale = true;
            Solution sol = min_cost_circulation(inst.graph, opt);
            g_stats.absorb(sol, inst.graph.num_original());
            if (sol.cost != want) {
                std::ostringstream ss;
                ss << "cost mismatch on seed " << seed << ": got " << sol.cost << ", oracle "
                   << want;
                return {false, ss.str()};
            }
        }
        ++count;
    }
    double secs = seconds_since(t0);
    std::ostringstream ss;
    ss << count << " instances x2 engines vs exhaustive oracle, exact, " << secs << "s";
    return {secs < 30.0, ss.str()};
}

Outcome criterion_2() {
    auto t0 = std::chrono::steady_clock::now();
    int count = 0;
    for (int i = 0; i < 200; ++i) {
        InstanceSpec spec;
        spec.kind = GenKind::random_multigraph;
        spec.n = 20 + (i * 480) / 199;                       // 20 .. 500
        spec.m = std::min<std::int64_t>(2000, spec.n * (2 + i % 3));
        spec.cost_min = -10;
        spec.cost_max = 10;
        spec.seed = 0x20000 + static_cast<std::uint64_t>(i);
        Instance inst = generate(spec);
        SolveOptions opt;
        opt.certify_each_scale = true;
        Solution sol = min_cost_circulation(inst.graph, opt);
        g_stats.absorb(sol, inst.graph.num_original());
        std::int64_t want = cycle_canceling_circulation_cost(inst.graph);
        if (sol.cost != want) {
            std::ostringstream ss;
            ss << "cost mismatch on instance " << i << ": got " << sol.cost << ", oracle "
               << want;
            return {false, ss.str()};
        }
        ++count;
    }
    double secs = seconds_since(t0);
    std::ostringstream ss;
    ss << count << " instances (n<=500, m<=2000) vs cycle canceling, exact, " << secs << "s";
    return {secs < 120.0, ss.str()};
}

// Shared state harvested from the planar corpus for criteria 9 and 10.
struct PlanarHarvest {
    std::int64_t reach_pieces = 0;
    std::int64_t reach_mismatches = 0;
    std::int64_t pair_samples = 0;
    std::int64_t pair_mismatches = 0;
};

PlanarHarvest g_harvest;

Outcome criterion_3() {
    auto t0 = std::chrono::steady_clock::now();
    Rng pick(0xACCE55);
    int count = 0;
    for (int i = 0; i < 200; ++i) {
        InstanceSpec spec;
        if (i % 2 == 0) {
            spec.kind = GenKind::grid;
            int side = 3 + (i / 2) % 18;  // up to 20x20 = 400 vertices
            spec.rows = side;
            spec.cols = side;
        } else {
            spec.kind = GenKind::triangulation;
            spec.n = 10 + (i * 390) / 199;
        }
        spec.multiplicity = 1 + i % 3;
        spec.cost_min = -10;
        spec.cost_max = 10;
        spec.seed = 0x30000 + static_cast<std::uint64_t>(i);
        Instance inst = generate(spec);
        const MultiGraph& g = inst.graph;

        PlanarHooks hooks;
        hooks.on_reach = [&](const planar::PieceGraph& pg, const planar::PieceState& st,
                             const planar::ReachData& rd, const ApproxView& view,
                             std::span<const Price> bp) {
            if (g_harvest.reach_pieces >= 600 || pg.nb() < 1 || pg.nb() > 64) return;
            ++g_harvest.reach_pieces;
            for (int pos = 0; pos < pg.nb(); ++pos) {
                auto want = planar::zero_reach_bfs(pg, view, st, bp, pos);
                auto got = planar::decode_reach(pg, rd, pos);
                if (want != got) ++g_harvest.reach_mismatches;
            }
        };
        int queries_left = (i % 10 == 0) ? 2 : 0;
        hooks.on_h_query = [&](const ApproxView& view, std::span<const VertexId> boundary,
                               const std::function<Prices(VertexId)>& query) {
            if (queries_left <= 0 || boundary.empty()) return;
            --queries_left;
            VertexId src = boundary[pick.below(boundary.size())];
            Prices h = query(src);
            Prices full = forward_bf(view, src);
            for (VertexId v : boundary) {
                ++g_harvest.pair_samples;
                if (h[static_cast<size_t>(v)] != full[static_cast<size_t>(v)])
                    ++g_harvest.pair_mismatches;
            }
            ++g_harvest.pair_samples;
            if (h[static_cast<size_t>(view.sink())] != full[static_cast<size_t>(view.sink())])
                ++g_harvest.pair_mismatches;
        };

        SolveOptions popt;
        popt.algo = Algo::planar;
        popt.planar_r = 4 + i % 30;
        popt.rotation = &inst.rotation;
        popt.certify_each_scale = true;
        Solution planar_sol = planar_min_cost_circulation(g, popt, &hooks);
        g_stats.absorb(planar_sol, g.num_original());

        Solution general_sol = min_cost_circulation(g, {});
        g_stats.absorb(general_sol, g.num_original());
        std::int64_t want = cycle_canceling_circulation_cost(g);
        if (planar_sol.cost != want || general_sol.cost != want) {
            std::ostringstream ss;
            ss << "cost mismatch on instance " << i << ": planar " << planar_sol.cost
               << ", general " << general_sol.cost << ", oracle " << want;
            return {false, ss.str()};
        }
        ++count;
    }
    double secs = seconds_since(t0);
    std::ostringstream ss;
    ss << count << " planar instances (grids+triangulations, n<=400, mult<=3), "
       << "planar == general == oracle, " << secs << "s";
    return {secs < 300.0, ss.str()};
}

Outcome criterion_4() {
    std::ostringstream ss;
    ss << "psi*Delta <= 6*eps*m asserted at " << g_stats.phases
       << " phase boundaries, 0 violations";
    return {g_stats.phases > 0, ss.str()};
}

Outcome criterion_5() {
    std::ostringstream ss;
    ss << "max phases per refine at " << std::fixed << g_stats.max_phase_ratio * 100
       << "% of the 8*sqrt(m)+2 bound across " << g_stats.solves << " solves";
    return {g_stats.max_phase_ratio <= 1.0 && g_stats.solves > 0, ss.str()};
}

Outcome criterion_6() {
    std::ostringstream ss;
    ss << "max augmenting-path edges per refine at " << std::fixed
       << g_stats.max_edge_ratio * 100 << "% of the 4m+6m(1+ln m) bound";
    return {g_stats.max_edge_ratio <= 1.0, ss.str()};
}

Outcome criterion_7() {
    Rng rng(0x700D);
    for (int it = 0; it < 10000; ++it) {
        Price c = rng.range(-1000000, 1000000);
        Price eps = Price{2} << rng.below(20);
        Price cp = round_to(c + eps / 2, eps / 2);
        Price cpr = round_to(-c + eps / 2, eps / 2);
        if (!(cp > c && cp <= c + eps)) return {false, "rounding window violated"};
        if (!(cp + cpr > eps)) return {false, "reverse bound violated"};
        if (cp % (eps / 2) != 0) return {false, "not a multiple of eps/2"};
    }
    return {true, "10000 random (cost, eps) pairs: c < c' <= c+eps and c'(e)+c'(rev e) > eps"};
}

Outcome criterion_8() {
    auto t0 = std::chrono::steady_clock::now();
    std::int64_t phases = 0;
    for (int i = 0; i < 30; ++i) {
        InstanceSpec spec;
        spec.kind = GenKind::random_multigraph;
        spec.n = 50 + i * 5;  // up to 195
        spec.m = spec.n * 3;
        spec.seed = 0x80000 + static_cast<std::uint64_t>(i);
        Instance inst = generate(spec);
        SolveOptions opt;
        opt.algo = Algo::dial;
        opt.heavy_checks = true;  // per-phase: Delta vs heap engine + full feasibility scan
        Solution sol = min_cost_circulation(inst.graph, opt);
        for (const auto& sc : sol.scales) phases += sc.phases;
    }
    std::ostringstream ss;
    ss << "30 instances (n<=200): every Dial update re-scanned feasible and Delta matched "
       << "plain Dijkstra across " << phases << " phases, " << seconds_since(t0) << "s";
    return {phases > 0, ss.str()};
}

Outcome criterion_9() {
    // Piece harvest from criterion 3 plus the direct SMAWK check.
    if (g_harvest.reach_pieces < 500) {
        std::ostringstream ss;
        ss << "only " << g_harvest.reach_pieces << " pieces harvested";
        return {false, ss.str()};
    }
    if (g_harvest.reach_mismatches != 0) {
        std::ostringstream ss;
        ss << g_harvest.reach_mismatches << " reach decode mismatches";
        return {false, ss.str()};
    }
    Rng rng(0x900D);
    for (int it = 0; it < 200; ++it) {
        int rows = 1 + static_cast<int>(rng.below(64));
        int cols = 1 + static_cast<int>(rng.below(64));
        std::vector<std::vector<Price>> m(static_cast<size_t>(rows),
                                          std::vector<Price>(static_cast<size_t>(cols), 0));
        std::vector<Price> ro(static_cast<size_t>(rows)), co(static_cast<size_t>(cols));
        for (auto& x : ro) x = rng.range(0, 50);
        for (auto& x : co) x = rng.range(0, 50);
        Price scale = rng.range(0, 3);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                m[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    ro[static_cast<size_t>(r)] + co[static_cast<size_t>(c)] +
                    scale * (r - c) * (r - c);
        int rects = static_cast<int>(rng.below(8));
        for (int k = 0; k < rects; ++k) {
            int i0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(rows)));
            int j0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(cols)));
            Price d = rng.range(1, 9);
            for (int r = 0; r <= i0; ++r)
                for (int c = j0; c < cols; ++c) m[static_cast<size_t>(r)][static_cast<size_t>(c)] += d;
        }
        auto entry = [&](int r, int c) {
            return m[static_cast<size_t>(r)][static_cast<size_t>(c)];
        };
        auto left = planar::smawk_leftmost_row_minima(rows, cols, entry);
        auto right = planar::smawk_rightmost_row_minima(rows, cols, entry);
        for (int r = 0; r < rows; ++r) {
            int bl = 0, br = 0;
            for (int c = 1; c < cols; ++c) {
                if (entry(r, c) < entry(r, bl)) bl = c;
                if (entry(r, c) <= entry(r, br)) br = c;
            }
            if (left[static_cast<size_t>(r)] != bl || right[static_cast<size_t>(r)] != br)
                return {false, "smawk row minima differ from brute force"};
        }
    }
    std::ostringstream ss;
    ss << g_harvest.reach_pieces
       << " live pieces: decode == zero-subgraph BFS; 200 Monge matrices: smawk == brute force";
    return {true, ss.str()};
}

Outcome criterion_10() {
    if (g_harvest.pair_samples < 100) {
        std::ostringstream ss;
        ss << "only " << g_harvest.pair_samples << " sampled pairs";
        return {false, ss.str()};
    }
    std::ostringstream ss;
    ss << g_harvest.pair_samples << " sampled boundary-pair distances, "
       << g_harvest.pair_mismatches << " mismatches vs full-graph distances";
    return {g_harvest.pair_mismatches == 0, ss.str()};
}

Outcome criterion_11() {
    std::ostringstream ss;
    ss << g_stats.certified << "/" << g_stats.solves
       << " solutions certified (eps-optimality scan + negative-cycle absence,"
       << " each scale re-checked in-run)";
    return {g_stats.solves > 0 && g_stats.certified == g_stats.solves, ss.str()};
}

Outcome criterion_12(const std::string& report_path) {
    std::ostringstream report;
    for (int side : {8, 11, 16, 23, 32}) {
        InstanceSpec spec;
        spec.kind = GenKind::grid;
        spec.rows = side;
        spec.cols = side;
        spec.multiplicity = 1;
        spec.seed = 0xC0FFEE + static_cast<std::uint64_t>(side);
        Instance inst = generate(spec);
        const MultiGraph& g = inst.graph;
        int r = planar::default_piece_size(g.num_vertices(), g.num_original());
        planar::RDivision div = planar::build_r_division(g, r, &inst.rotation);
        int boundary = 0;
        for (char b : div.is_boundary) boundary += b;
        SolveOptions opt;
        opt.algo = Algo::planar;
        opt.planar_r = r;
        opt.rotation = &inst.rotation;
        Solution sol = min_cost_circulation(g, opt);
        std::int64_t phases = 0;
        for (const auto& sc : sol.scales) phases += sc.phases;
        double avg_phases =
            sol.scales.empty() ? 0.0
                               : static_cast<double>(phases) / static_cast<double>(sol.scales.size());
        report << "{\"schema\":\"unitmcf-scaling-v1\",\"n\":" << g.num_vertices()
               << ",\"m\":" << g.num_original() << ",\"r\":" << r
               << ",\"sqrt_m\":" << std::sqrt(static_cast<double>(g.num_original()))
               << ",\"boundary\":" << boundary << ",\"n_over_sqrt_r\":"
               << static_cast<double>(g.num_vertices()) / std::sqrt(static_cast<double>(r))
               << ",\"scales\":" << sol.scales.size() << ",\"avg_phases_per_scale\":" << avg_phases
               << ",\"cost\":" << sol.cost << "}\n";
    }
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << report.str();
    }
    std::cout << report.str();
    return {true, "scaling-trend report written" +
                      (report_path.empty() ? std::string() : " to " + report_path)};
}

}  // namespace

int main(int argc, char** argv) {
    std::string report_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--report") == 0) report_path = argv[i + 1];

    struct Entry {
        int id;
        const char* name;
        Outcome (*fn)();
        bool gating;
    };
    bool all_pass = true;
    auto run = [&](int id, const char* name, const Outcome& out, bool gating) {
        std::cout << (out.pass ? "[PASS] " : (gating ? "[FAIL] " : "[INFO] ")) << "criterion "
                  << id << " (" << name << "): " << out.detail << "\n";
        std::cout.flush();
        if (gating && !out.pass) all_pass = false;
    };
    try {
        run(1, "exact optimality, tiny scale", criterion_1(), true);
        run(2, "exact optimality, mid scale", criterion_2(), true);
        run(3, "planar/general equivalence", criterion_3(), true);
        run(4, "total-excess bound", criterion_4(), true);
        run(5, "phase bound", criterion_5(), true);
        run(6, "augmenting-path length bound", criterion_6(), true);
        run(7, "rounding and reverse bound", criterion_7(), true);
        run(8, "bucket-queue feasibility", criterion_8(), true);
        run(9, "interval reachability", criterion_9(), true);
        run(10, "compressed distance exactness", criterion_10(), true);
        run(11, "certificate soundness", criterion_11(), true);
        run(12, "scaling trend (informational)", criterion_12(report_path), false);
    } catch (const std::exception& e) {
        std::cout << "[FAIL] unexpected exception: " << e.what() << "\n";
        return 1;
    }
    std::cout << (all_pass ? "acceptance: all gating criteria passed\n"
                           : "acceptance: FAILURES present\n");
    return all_pass ? 0 : 1;
}
