#include "mcf/solver.hpp"

#include <cmath>
#include <cstdlib>
#include <deque>
#include <utility>

#include "mcf/planar/planar_refine.hpp"

namespace mcf {

namespace detail {

Solution run_scaling(const MultiGraph& g, const SolveOptions& opt, const RefineFn& do_refine) {
    const int n = g.num_vertices();
    CostScale cs = CostScale::make(g);
    FlowState f(g);
    Prices p(static_cast<size_t>(n), 0);

    Solution sol;
    sol.shift = cs.shift;
    int scale_idx = 0;
    for (Price eps = cs.initial_eps; eps > 0; eps >>= 1, ++scale_idx) {
        // Loop invariant of the scaling framework: f is 2*eps-optimal wrt p.
        MCF_CHECK(is_eps_optimal(g, f, p, cs.shift, 2 * eps),
                  "scaling loop invariant violated: f not 2*eps-optimal");
        RefineStats stats;
        p = do_refine(f, p, eps, &stats, scale_idx);
        sol.scales.push_back({eps, stats.phases, stats.paths, stats.path_edges});
        sol.final_eps = eps;
        if (opt.certify_each_scale) {
            std::string why;
            MCF_CHECK(certify(g, f, p, cs.shift, eps, &why),
                      "per-scale certificate failed: " + why);
        }
        if (cs.done(eps, n)) {
            ++scale_idx;
            break;
        }
    }
    MCF_CHECK(scale_idx == cs.expected_scales(n), "scale count differs from analytic formula");

    sol.cost = f.raw_cost();
    sol.flow.resize(static_cast<size_t>(g.num_original()));
    for (EdgeId o = 0; o < g.num_original(); ++o)
        sol.flow[static_cast<size_t>(o)] = static_cast<std::int8_t>(f.flow(2 * o));
    sol.prices = std::move(p);
    std::string why;
    sol.certified = certify(g, f, sol.prices, cs.shift, sol.final_eps, &why);
    MCF_CHECK(sol.certified, "final certificate failed: " + why);
    return sol;
}

}  // namespace detail

Solution min_cost_circulation(const MultiGraph& g, const SolveOptions& opt) {
    if (opt.algo == Algo::planar) return planar_min_cost_circulation(g, opt);
    CostScale cs = CostScale::make(g);
    RefineOptions ropt;
    ropt.engine = opt.algo == Algo::general ? Engine::heap : Engine::dial;
    ropt.heavy_checks = opt.heavy_checks;
    std::vector<PhaseRecord> trace;
    Solution sol = detail::run_scaling(
        g, opt,
        [&](FlowState& f, const Prices& p0, Price eps, RefineStats* stats, int scale_idx) {
            RefineOptions local = ropt;
            if (opt.trace_phases)
                local.on_phase = [&trace, scale_idx](const PhaseRecord& rec) {
                    PhaseRecord r = rec;
                    r.scale = scale_idx;
                    trace.push_back(r);
                };
            return refine(g, cs, f, p0, eps, local, stats);
        });
    sol.phase_trace = std::move(trace);
    return sol;
}

Solution min_cost_st_flow(const MultiGraph& g, VertexId s, VertexId t, std::int64_t value,
                          const SolveOptions& opt) {
    MCF_CHECK(s >= 0 && s < g.num_vertices() && t >= 0 && t < g.num_vertices() && s != t,
              "min_cost_st_flow: bad terminals");
    MCF_CHECK(value >= 0, "min_cost_st_flow: negative value");
    FlowState f(g);
    // BFS augmenting paths; each augmentation moves exactly one unit.
    std::int64_t sent = 0;
    std::vector<EdgeId> pred(static_cast<size_t>(g.num_vertices()));
    while (sent < value) {
        std::fill(pred.begin(), pred.end(), EdgeId{-1});
        std::deque<VertexId> queue{s};
        pred[static_cast<size_t>(s)] = -2;
        bool reached = false;
        while (!queue.empty() && !reached) {
            VertexId v = queue.front();
            queue.pop_front();
            for (EdgeId e : g.out_edges(v)) {
                if (!f.residual(e)) continue;
                VertexId w = g.head(e);
                if (pred[static_cast<size_t>(w)] != -1) continue;
                pred[static_cast<size_t>(w)] = e;
                if (w == t) {
                    reached = true;
                    break;
                }
                queue.push_back(w);
            }
        }
        if (!reached) break;
        for (VertexId v = t; v != s;) {
            EdgeId e = pred[static_cast<size_t>(v)];
            f.send_edge(e);
            v = g.tail(e);
        }
        ++sent;
    }
    if (sent < value) {
        Solution sol;
        sol.feasible = false;
        sol.is_circulation = false;
        sol.src = s;
        sol.dst = t;
        sol.value = value;
        return sol;
    }

    // Min-cost circulation on the residual multigraph; exactly one of e,
    // rev(e) is residual for every pair, so the reduction is one original
    // edge per residual edge of g.
    MultiGraph residual(g.num_vertices());
    std::vector<EdgeId> back;  // g' original index -> edge id of g
    for (EdgeId e = 0; e < g.num_edge_ids(); ++e) {
        if (!f.residual(e)) continue;
        residual.add_edge(g.tail(e), g.head(e), g.cost(e));
        back.push_back(e);
    }
    Solution circ = min_cost_circulation(residual, opt);
    for (size_t o = 0; o < back.size(); ++o)
        if (circ.flow[o]) f.send_edge(back[o]);

    Solution sol;
    sol.is_circulation = false;
    sol.src = s;
    sol.dst = t;
    sol.value = value;
    sol.cost = f.raw_cost();
    sol.shift = circ.shift;
    sol.final_eps = circ.final_eps;
    sol.prices = std::move(circ.prices);
    sol.scales = std::move(circ.scales);
    sol.phase_trace = std::move(circ.phase_trace);
    sol.flow.resize(static_cast<size_t>(g.num_original()));
    for (EdgeId o = 0; o < g.num_original(); ++o)
        sol.flow[static_cast<size_t>(o)] = static_cast<std::int8_t>(f.flow(2 * o));
    std::string why;
    sol.certified = certify(sol, g, &why);
    MCF_CHECK(sol.certified, "s-t flow certificate failed: " + why);
    return sol;
}

bool residual_has_negative_cycle(const MultiGraph& g, const FlowState& f) {
    const int n = g.num_vertices();
    std::vector<std::int64_t> dist(static_cast<size_t>(n), 0);
    for (int round = 0; round <= n; ++round) {
        bool changed = false;
        for (EdgeId e = 0; e < g.num_edge_ids(); ++e) {
            if (!f.residual(e)) continue;
            VertexId u = g.tail(e), v = g.head(e);
            std::int64_t nd = dist[static_cast<size_t>(u)] + g.cost(e);
            if (nd < dist[static_cast<size_t>(v)]) {
                dist[static_cast<size_t>(v)] = nd;
                changed = true;
            }
        }
        if (!changed) return false;
    }
    return true;
}

bool certify(const MultiGraph& g, const FlowState& f, const Prices& p, int shift,
             Price eps, std::string* why) {
    auto reject = [&](const char* reason) {
        if (why) *why = reason;
        return false;
    };
    for (EdgeId o = 0; o < g.num_original(); ++o) {
        int fe = f.flow(2 * o);
        if (fe < 0 || fe > 1) return reject("flow out of capacity bounds");
    }
    if (!f.is_circulation()) return reject("flow is not a circulation");
    if (!is_eps_optimal(g, f, p, shift, eps)) return reject("flow not eps-optimal wrt prices");
    Price unit = Price{1} << shift;
    if (eps * (g.num_vertices() + 1) <= unit && residual_has_negative_cycle(g, f))
        return reject("residual graph has a negative cycle");
    return true;
}

bool certify(const Solution& sol, const MultiGraph& g, std::string* why) {
    auto reject = [&](const char* reason) {
        if (why) *why = reason;
        return false;
    };
    if (!sol.feasible) return reject("solution marked infeasible");
    if (sol.flow.size() != static_cast<size_t>(g.num_original()))
        return reject("flow vector size mismatch");
    FlowState f(g);
    for (EdgeId o = 0; o < g.num_original(); ++o) {
        if (sol.flow[static_cast<size_t>(o)] < 0 || sol.flow[static_cast<size_t>(o)] > 1)
            return reject("flow out of capacity bounds");
        if (sol.flow[static_cast<size_t>(o)]) f.send_edge(2 * o);
    }
    if (f.raw_cost() != sol.cost) return reject("stated cost differs from flow cost");
    if (sol.is_circulation) {
        if (!f.is_circulation()) return reject("flow is not a circulation");
    } else {
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            std::int64_t want = v == sol.src ? -sol.value : v == sol.dst ? sol.value : 0;
            if (f.excess(v) != want) return reject("flow conservation violated");
        }
    }
    if (sol.prices.size() != static_cast<size_t>(g.num_vertices()))
        return reject("price vector size mismatch");
    if (!is_eps_optimal(g, f, sol.prices, sol.shift, sol.final_eps))
        return reject("flow not eps-optimal wrt prices");
    Price unit = Price{1} << sol.shift;
    if (sol.final_eps * (g.num_vertices() + 1) <= unit && residual_has_negative_cycle(g, f))
        return reject("residual graph has a negative cycle");
    return true;
}

}  // namespace mcf
