#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mcf/dijkstra.hpp"
#include "mcf/residual.hpp"
#include "mcf/scale.hpp"

namespace mcf {

// One augmenting path of a phase: the residual edges carrying flow plus the
// excess / deficit endpoints it connects.
struct ZeroPath {
    std::vector<EdgeId> edges;
    VertexId from_excess = -1;
    VertexId to_deficit = -1;
};

struct PhaseRecord {
    int scale = 0;            // index of the enclosing scale, filled by the driver
    int phase = 0;
    Price eps = 0;
    Price delta = 0;          // delta(s, t) of this phase
    std::int64_t psi_before = 0;
    std::int64_t psi_after = 0;
    int paths = 0;
    std::int64_t path_edges = 0;
};

enum class Engine { heap, dial };

struct RefineOptions {
    Engine engine = Engine::dial;
    // Heavy self-checks: Bellman-Ford non-positive-cycle oracle on small
    // instances, exhaustive feasibility scans after every Dial update, and a
    // heap/dial cross check. Cheap invariant checks are always on.
    bool heavy_checks = false;
    std::function<void(const PhaseRecord&)> on_phase;
};

struct RefineStats {
    int phases = 0;
    std::int64_t paths = 0;
    std::int64_t path_edges = 0;
};

// Maximal set of edge-disjoint s->t paths in the extended view using only
// edges of reduced (wrt p) cost 0, found by the stack-based path scan with a
// persistent dead-vertex set. Flow is sent along each path as it is found
// (the auxiliary edges of a vertex carry its remaining excess / deficit as
// capacity, so an excess-2 vertex may head two paths of one batch);
// afterwards no zero-reduced s->t path remains. Outgoing edges are scanned
// in adjacency order (edge index ascending, auxiliary edge last), so the
// result is deterministic. Pre: p feasible, the zero-reduced-cost subgraph
// is acyclic.
std::vector<ZeroPath> maximal_zero_paths(const ApproxView& view, const Prices& p,
                                         FlowState& f);

// One scale: turns a circulation f that is 2*eps-optimal wrt p0 into a
// circulation that is eps-optimal wrt the returned price function. Runs
// phases of distances-to-t followed by a maximal zero-path augmentation
// until no excess remains.
Prices refine(const MultiGraph& g, const CostScale& cs, FlowState& f, const Prices& p0,
              Price eps, const RefineOptions& opt = {}, RefineStats* stats = nullptr);

// Phase-invariant bookkeeping shared by the general and planar engines.
// Checks, always on: Delta strictly increases by multiples of eps/2,
// psi * Delta <= 6 * eps * m while excess remains, the phase count stays
// within 8*sqrt(m)+2 and the total augmenting-path length within
// 4m + 6m(1 + ln m).
class PhaseInvariants {
public:
    PhaseInvariants(const MultiGraph& g, Price eps);
    void on_phase_start(Price delta, std::int64_t psi);
    void on_paths(std::int64_t paths, std::int64_t edges);
    void on_done() const;
    int phases() const { return phases_; }
    std::int64_t paths() const { return paths_; }
    std::int64_t path_edges() const { return path_edges_; }

private:
    std::int64_t m_;
    Price eps_;
    Price prev_delta_ = -1;
    int phases_ = 0;
    std::int64_t paths_ = 0;
    std::int64_t path_edges_ = 0;
};

}  // namespace mcf
