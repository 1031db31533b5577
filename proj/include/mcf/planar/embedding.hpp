#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mcf/graph.hpp"
#include "mcf/ints.hpp"

namespace mcf::planar {

// Combinatorial embedding of a simple undirected graph: a circular doubly
// linked rotation (clockwise dart order) per vertex. Darts are 2*edge + dir;
// dart 2e points u -> v for edge e = {u, v} and 2e+1 points v -> u. Faces
// are traced with face_next(d) = rotation-successor of twin(d).
struct RotationSystem {
    int n = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> nxt, prv;  // per dart, circular within its tail vertex
    std::vector<int> entry;     // per vertex, some dart or -1

    explicit RotationSystem(int n_ = 0) : n(n_), entry(static_cast<size_t>(n_), -1) {}

    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_darts() const { return 2 * num_edges(); }
    static int twin(int d) { return d ^ 1; }
    VertexId tail(int d) const { return (d & 1) ? edges[d >> 1].second : edges[d >> 1].first; }
    VertexId head(int d) const { return (d & 1) ? edges[d >> 1].first : edges[d >> 1].second; }

    // Creates the edge with both darts unattached; returns the edge id.
    int new_edge(VertexId u, VertexId v) {
        edges.emplace_back(u, v);
        nxt.resize(edges.size() * 2, -1);
        prv.resize(edges.size() * 2, -1);
        return static_cast<int>(edges.size()) - 1;
    }

    bool attached(int d) const { return nxt[static_cast<size_t>(d)] >= 0; }

    void attach_only(int d) {  // first dart of its vertex
        nxt[static_cast<size_t>(d)] = prv[static_cast<size_t>(d)] = d;
        entry[static_cast<size_t>(tail(d))] = d;
    }
    void attach_after(int pos, int d) {
        nxt[static_cast<size_t>(d)] = nxt[static_cast<size_t>(pos)];
        prv[static_cast<size_t>(d)] = pos;
        prv[static_cast<size_t>(nxt[static_cast<size_t>(pos)])] = d;
        nxt[static_cast<size_t>(pos)] = d;
    }
    void attach_before(int pos, int d) { attach_after(prv[static_cast<size_t>(pos)], d); }

    // Attach d at the vertex, at an arbitrary position (or as first dart).
    void attach(int d) {
        int e = entry[static_cast<size_t>(tail(d))];
        if (e < 0) attach_only(d);
        else attach_after(e, d);
    }

    int face_next(int d) const { return nxt[static_cast<size_t>(twin(d))]; }

    // All faces as dart cycles.
    std::vector<std::vector<int>> faces() const;

    // Structural validation: every dart attached to a consistent cycle at its
    // tail, and Euler's formula V - E + F = 1 + #components holds.
    void validate() const;
};

// LR planarity test and embedding. Returns the rotation system of a planar
// embedding, or nullopt when the graph contains a Kuratowski obstruction.
// Input edges must be simple (no loops, no duplicates).
std::optional<RotationSystem> planar_embed(
    int n, const std::vector<std::pair<VertexId, VertexId>>& edges);

// Builds a RotationSystem from explicit cyclic neighbor lists (as carried by
// generated instances and DIMACS embedding blocks) and validates that every
// list is a permutation of the vertex's support neighbors and that the
// result is a genus-zero embedding.
RotationSystem rotation_from_neighbor_lists(
    int n, const std::vector<std::pair<VertexId, VertexId>>& edges,
    const std::vector<std::vector<VertexId>>& rotation);

std::vector<std::vector<VertexId>> neighbor_lists_from_rotation(const RotationSystem& rot);

// In-place augmentation used ahead of separator decomposition: adds edges
// until the graph is connected, then biconnected, then every face is a
// triangle. Returns the number of edges of the input; edges with id >= that
// are the added dummies. Pre: n >= 3, simple input embedding.
int triangulate(RotationSystem& rot);

// The simple undirected support of a multigraph: one support edge per
// adjacent unordered vertex pair (self loops dropped).
struct SupportGraph {
    int n = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> support_of;  // per multigraph edge id, support edge or -1 (loops)
};

SupportGraph build_support(const MultiGraph& g);

}  // namespace mcf::planar
