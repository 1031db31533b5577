#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "mcf/planar/rdivision.hpp"
#include "mcf/residual.hpp"

namespace mcf::planar {

// Parallel residual edges of one directed vertex pair inside a piece,
// sorted by raw cost so the head of the residual subsequence is always the
// minimum-c' representative (the base-price reduction is constant within a
// bundle, and rounding is monotone).
struct Bundle {
    int from, to;  // local vertex indices
    std::vector<EdgeId> edges;
};

// Static per-piece topology: local indexing, bundles, boundary order and
// the hole occurrence sequence used for the Monge decomposition.
struct PieceGraph {
    int id = -1;
    std::vector<VertexId> verts;        // global ids; local index = position
    std::unordered_map<VertexId, int> local;
    std::vector<int> boundary_local;    // local ids of boundary vertices
    std::vector<int> boundary_pos;      // local id -> position in boundary_local, or -1
    std::vector<Bundle> bundles;
    std::vector<std::vector<int>> out;  // local vertex -> bundle ids
    std::vector<std::vector<int>> in;   // local vertex -> bundle ids (reversed)
    bool single_hole = false;
    std::vector<int> hole_occ;          // local ids along the hole, cyclic

    int nl() const { return static_cast<int>(verts.size()); }
    int nb() const { return static_cast<int>(boundary_local.size()); }
    int s_local() const { return nl(); }
    int t_local() const { return nl() + 1; }
    // clique index space: boundary positions, then s, then t
    int s_idx() const { return nb(); }
    int t_idx() const { return nb() + 1; }
};

PieceGraph build_piece_graph(const MultiGraph& g, const RDivision& div, int pid);

// Live per-scale state: the local feasible price function and the distance
// clique of P''_{f,i} (kInf entries where unreachable).
struct PieceState {
    Prices p_local;             // size nl + 2
    std::vector<Price> clique;  // (nb+2) * (nb+2), row-major, from -> to
    bool dirty = true;

    Price& at(const PieceGraph& pg, int from_idx, int to_idx) {
        return clique[static_cast<size_t>(from_idx) * (pg.nb() + 2) + to_idx];
    }
    Price at(const PieceGraph& pg, int from_idx, int to_idx) const {
        return clique[static_cast<size_t>(from_idx) * (pg.nb() + 2) + to_idx];
    }
};

// Minimum-c' residual member of the bundle, or -1 when saturated.
EdgeId bundle_representative(const Bundle& b, const FlowState& f);

// Recomputes the distance clique with one Dijkstra per boundary vertex plus
// one from s, using p_local as the potential (it must be feasible for the
// current P''_{f,i}).
void rebuild_clique(const PieceGraph& pg, const ApproxView& view, PieceState& st);

// Distances to t in the piece augmented with boundary exit edges b -> t of
// cost pstar(b): extends the phase price function to interior vertices
// (negative labels enter only through t-adjacent arcs, so Dijkstra seeded
// with them is exact). pstar must be true distances-to-t, i.e. pstar(t) = 0.
// Returns per-local-vertex values plus s, t slots.
Prices extend_prices(const PieceGraph& pg, const ApproxView& view, const PieceState& st,
                     std::span<const Price> pstar_of_boundary);

// A concrete shortest from -> to path inside P''_{f,i} realizing the clique
// entry, as multigraph edge ids (auxiliary hops excluded). Indices are
// clique indices (boundary position, s_idx or t_idx).
std::vector<EdgeId> translate_in_piece(const PieceGraph& pg, const ApproxView& view,
                                       const PieceState& st, int from_idx, int to_idx);

// Interval encoding of zero-cost reachability between boundaries: the
// boundary clique is split per hole into facing-arc blocks. Blocks whose
// entries are all finite are Monge and encoded as [leftmost, rightmost]
// zero intervals found with SMAWK; blocks containing infinities (and whole
// pieces without the single-hole property) fall back to explicit zero
// lists.
struct ReachBlock {
    bool monge = false;
    std::vector<int> rows, cols;  // boundary positions (clique indices)
    std::vector<int> lo, hi;      // per row slot, positions into cols; empty: lo > hi
    std::vector<int> b_positions; // sorted positions into cols that carry a zero
    std::vector<std::vector<int>> zero_cols;  // dense fallback, per row slot
};

struct ReachData {
    std::vector<ReachBlock> blocks;
    // per boundary position: (block, row slot) pairs
    std::vector<std::vector<std::pair<int, int>>> rows_of;
    // per boundary position: (block, col position) pairs, for W deletions
    std::vector<std::vector<std::pair<int, int>>> cols_of;
};

ReachData build_reach(const PieceGraph& pg, const PieceState& st,
                      std::span<const Price> pstar_of_boundary);

// Test oracle: boundary positions reachable from boundary position v
// through zero-reduced-cost residual edges of the piece (multi-hop BFS over
// the extended interior prices).
std::vector<char> zero_reach_bfs(const PieceGraph& pg, const ApproxView& view,
                                 const PieceState& st,
                                 std::span<const Price> pstar_of_boundary, int from_pos);

// Decoded reachable set from a ReachData (self pairs excluded), for tests.
std::vector<char> decode_reach(const PieceGraph& pg, const ReachData& rd, int from_pos);

}  // namespace mcf::planar
