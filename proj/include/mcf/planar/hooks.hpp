#pragma once

#include <functional>
#include <span>

#include "mcf/planar/piece.hpp"

namespace mcf {

// Test instrumentation for the planar engine; every hook may be empty.
struct PlanarHooks {
    // After a reach (zero-reachability) rebuild of a piece.
    std::function<void(const planar::PieceGraph&, const planar::PieceState&,
                       const planar::ReachData&, const ApproxView&,
                       std::span<const Price>)>
        on_reach;
    // After each phase's compressed distance computation; pstar is indexed
    // by global vertex id with s = n, t = n+1 (boundary entries meaningful).
    std::function<void(const ApproxView&, const Prices&)> on_distances;
    // After each augmentation, with the translated real edges (already sent).
    std::function<void(const ApproxView&, const std::vector<EdgeId>&)> on_augment;
    // After the negative-edge saturation that opens a scale.
    std::function<void(const ApproxView&, const std::vector<EdgeId>&)> on_saturate;
    // Once per phase, with the boundary vertex list and a query evaluating
    // single-source distances in the current compressed graph from any
    // boundary vertex (or the view's s).
    std::function<void(const ApproxView&, std::span<const VertexId>,
                       const std::function<Prices(VertexId)>&)>
        on_h_query;
};

}  // namespace mcf
