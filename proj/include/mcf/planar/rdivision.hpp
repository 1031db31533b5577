#pragma once

#include <string>
#include <vector>

#include "mcf/planar/embedding.hpp"

namespace mcf::planar {

// Rejection for non-planar input: the LR test found a Kuratowski
// obstruction (a K5 or K3,3 subdivision blocks the embedding).
struct nonplanar_error : error {
    nonplanar_error() : error("input graph is not planar (Kuratowski obstruction)") {}
};

struct Piece {
    std::vector<VertexId> verts;     // global vertex ids
    std::vector<VertexId> boundary;  // subset shared with other pieces
    std::vector<int> support_edges;  // support edge ids owned by this piece
    // Faces of the piece's plane subgraph that carry boundary vertices, as
    // cyclic boundary-occurrence sequences (a cut vertex may occur twice).
    std::vector<std::vector<VertexId>> holes;
    bool single_hole = false;  // one face covers every boundary vertex
    int hole_index = -1;       // index into holes when single_hole
};

struct RDivision {
    int n = 0;
    int r = 0;
    SupportGraph support;
    RotationSystem rotation;                  // embedding of the simple support
    std::vector<Piece> pieces;
    std::vector<int> owner;                   // support edge -> piece id
    std::vector<char> is_boundary;            // per vertex
    std::vector<std::vector<int>> pieces_of;  // vertex -> piece ids
};

// Pinned constants of the division validator; measured on the generator
// corpora rather than proven.
struct DivisionLimits {
    double c_pieces = 32.0;          // #pieces      <= c * max(1, n/r)
    double c_piece_verts = 2.0;      // |V(P)|       <= c * r + 2
    double c_piece_boundary = 10.0;  // |boundary(P)| <= c * sqrt(r)
    double c_total_boundary = 36.0;  // #boundary verts <= c * max(1, n/sqrt(r))
};

// Simplifies and embeds the support graph (or adopts the provided cyclic
// neighbor lists), triangulates it with dummy edges, and splits it into
// pieces by recursive cycle separators, re-triangulating per level. Throws
// nonplanar_error when no embedding exists.
RDivision build_r_division(const MultiGraph& g, int r,
                           const std::vector<std::vector<VertexId>>* rotation = nullptr);

// Recomputes every division invariant from scratch (ownership partition,
// vertex/boundary bounds against DivisionLimits, hole structure) and throws
// on violation. Returns a human-readable report.
std::string validate_r_division(const MultiGraph& g, const RDivision& div,
                                const DivisionLimits& limits = {});

// Piece-size default used by the CLI: ceil((n^2/m)^(1/3)) clamped to [4, n].
int default_piece_size(int n, int m);

}  // namespace mcf::planar
