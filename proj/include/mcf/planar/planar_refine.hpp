#pragma once

#include "mcf/solver.hpp"

namespace mcf {

namespace planar {
struct RDivision;
}

struct PlanarHooks;  // test instrumentation, see planar/hooks.hpp

// Min-cost circulation driven by the planar per-scale engine: builds the
// r-division once (honoring SolveOptions::rotation when provided) and
// simulates each refine call on the compressed dense-distance
// representation. Requires the support graph to be planar.
Solution planar_min_cost_circulation(const MultiGraph& g, const SolveOptions& opt,
                                     const PlanarHooks* hooks = nullptr);

// Same, against a prebuilt division (tests exercise degenerate divisions).
Solution planar_min_cost_circulation_with_division(const MultiGraph& g, const SolveOptions& opt,
                                                   const planar::RDivision& div,
                                                   const PlanarHooks* hooks = nullptr);

}  // namespace mcf
