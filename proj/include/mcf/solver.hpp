#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcf/refine.hpp"

namespace mcf {

struct ScaleRecord {
    Price eps = 0;
    int phases = 0;
    std::int64_t paths = 0;
    std::int64_t path_edges = 0;
};

struct Solution {
    bool feasible = true;
    bool is_circulation = true;
    VertexId src = -1, dst = -1;        // set for s-t flow solutions
    std::int64_t value = 0;
    std::int64_t cost = 0;              // in original (unscaled) cost units
    std::vector<std::int8_t> flow;      // per original edge, index e/2
    Prices prices;                      // certificate, scaled by 2^shift
    int shift = 0;
    Price final_eps = 0;                // certificate quality; 0 when no scaling ran
    bool certified = false;
    std::vector<ScaleRecord> scales;
    std::vector<PhaseRecord> phase_trace;  // filled when trace_phases is set
};

enum class Algo { general, dial, planar };

struct SolveOptions {
    Algo algo = Algo::dial;
    int planar_r = 0;          // 0: default r = ceil((n^2/m)^(1/3)), clamped to [4, n]
    // Cyclic neighbor lists of the simple support graph; when null the
    // planar engine computes an embedding itself.
    const std::vector<std::vector<VertexId>>* rotation = nullptr;
    bool heavy_checks = false;
    bool certify_each_scale = false;
    bool trace_phases = false;
};

// Minimum-cost circulation by cost scaling: f = 0, p = 0, eps = C/2, then
// refine and halve eps until eps <= 1/(n+1), which certifies optimality for
// integral costs.
Solution min_cost_circulation(const MultiGraph& g, const SolveOptions& opt = {});

// Minimum-cost s-t flow of the given value: finds any s-t flow of value k by
// augmenting paths, then runs min_cost_circulation on the residual
// multigraph. Returns feasible = false when no flow of value k exists.
Solution min_cost_st_flow(const MultiGraph& g, VertexId s, VertexId t, std::int64_t value,
                          const SolveOptions& opt = {});

// Independent optimality check: f must be a flow with the given excess
// pattern (a circulation by default), eps-optimal wrt p, and when
// eps <= 1/(n+1) the residual graph must be free of negative raw-cost
// cycles (Bellman-Ford, code path disjoint from refine).
bool certify(const MultiGraph& g, const FlowState& f, const Prices& p, int shift,
             Price eps, std::string* why = nullptr);

bool certify(const Solution& sol, const MultiGraph& g, std::string* why = nullptr);

// Bellman-Ford negative-cycle test on the residual graph under raw costs.
bool residual_has_negative_cycle(const MultiGraph& g, const FlowState& f);

namespace detail {

// One refine call: (f, p0, eps, stats, scale index) -> new price function.
using RefineFn =
    std::function<Prices(FlowState&, const Prices&, Price, RefineStats*, int)>;

// The scaling loop shared by the general and planar engines.
Solution run_scaling(const MultiGraph& g, const SolveOptions& opt, const RefineFn& do_refine);

}  // namespace detail

}  // namespace mcf
