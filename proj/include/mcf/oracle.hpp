#pragma once

#include <cstdint>

#include "mcf/flow.hpp"
#include "mcf/graph.hpp"

namespace mcf {

// Ground truth by enumeration: tries all 2^m assignments of {0,1} to the
// original edges, keeps those with zero excess everywhere and returns the
// minimum cost. Rejects m > 20.
std::int64_t exhaustive_circulation_cost(const MultiGraph& g);

// Ground truth by negative-cycle canceling: repeatedly finds residual
// negative cycles with Bellman-Ford (canceling every vertex-disjoint cycle
// found per pass) until none remains. Deterministic given edge order.
std::int64_t cycle_canceling_circulation_cost(const MultiGraph& g);

}  // namespace mcf
