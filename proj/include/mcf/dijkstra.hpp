#pragma once

#include <vector>

#include "mcf/residual.hpp"

namespace mcf {

// Distances from every vertex of the extended view to the super-sink t,
// computed by binary-heap Dijkstra over reversed edges with the feasible
// price function p (reduced c' >= 0 on every scanned edge; a negative
// reduced edge is a contract violation and aborts). The returned vector has
// size n+2 and is itself a feasible price function of the view; unreachable
// vertices (only s, when X is empty) hold kInf.
Prices distances_to(const ApproxView& view, const Prices& p);

// Dial (bucket queue) variant: requires p(s) = 0 and
// p(t) <= 0, runs bucket Dijkstra with bucket width eps/2 and stops once s
// is settled. For every settled v it overwrites p(v) := delta(v,t) - Delta,
// leaving other entries unchanged, so that afterwards p is again feasible
// with p(s) = 0 and p(t) = -Delta. Returns Delta = delta(s,t).
// Pre: X is nonempty (s can reach t).
Price dial_distances_to(const ApproxView& view, Prices& p);

// Test oracle: Bellman-Ford distances-to-t on the same extended view, no
// feasibility requirements. Returns kInf for unreachable vertices.
Prices bellman_ford_distances_to(const ApproxView& view);

// Heavy-check oracle: aborts unless the approximate residual graph is free
// of cycles of non-positive c' cost (the acyclicity behind the zero-path
// scans). Bellman-Ford on costs remapped to c'*(2m+1) - 1.
void check_no_nonpositive_cycle(const ApproxView& view);

}  // namespace mcf
