#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mcf/ints.hpp"

namespace mcf {

// Directed multigraph with paired reverse edges and unit capacities.
//
// Every call to add_edge(u, v, c) creates the original edge at an even id e
// and its reverse at e^1, so rev(e) = e ^ 1, cost(rev(e)) = -cost(e) and
// capacity is 1 for originals, 0 for reverses. Parallel edges and self loops
// are kept verbatim. The graph is immutable once handed to an algorithm and
// can then be shared freely across threads.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n) : n_(n), adj_(static_cast<size_t>(n)) {}

    EdgeId add_edge(VertexId u, VertexId v, std::int64_t cost) {
        MCF_CHECK(u >= 0 && u < n_ && v >= 0 && v < n_, "add_edge: vertex out of range");
        EdgeId e = static_cast<EdgeId>(2 * tail_.size());
        tail_.push_back(u);
        head_.push_back(v);
        cost_.push_back(cost);
        adj_[static_cast<size_t>(u)].push_back(e);
        adj_[static_cast<size_t>(v)].push_back(e ^ 1);
        return e;
    }

    int num_vertices() const { return n_; }
    // Number of original edges (m); the edge id space has size 2m.
    int num_original() const { return static_cast<int>(tail_.size()); }
    int num_edge_ids() const { return 2 * num_original(); }

    static bool is_original(EdgeId e) { return (e & 1) == 0; }
    static EdgeId rev(EdgeId e) { return e ^ 1; }

    VertexId tail(EdgeId e) const { return (e & 1) ? head_[e >> 1] : tail_[e >> 1]; }
    VertexId head(EdgeId e) const { return (e & 1) ? tail_[e >> 1] : head_[e >> 1]; }
    std::int64_t cost(EdgeId e) const { return (e & 1) ? -cost_[e >> 1] : cost_[e >> 1]; }
    int capacity(EdgeId e) const { return is_original(e) ? 1 : 0; }

    // Edge ids (original and reverse) whose tail is v, in insertion order.
    std::span<const EdgeId> out_edges(VertexId v) const {
        return adj_[static_cast<size_t>(v)];
    }

    std::int64_t max_abs_cost() const {
        std::int64_t c = 0;
        for (std::int64_t x : cost_) c = std::max(c, x < 0 ? -x : x);
        return c;
    }

private:
    int n_ = 0;
    std::vector<VertexId> tail_, head_;
    std::vector<std::int64_t> cost_;
    std::vector<std::vector<EdgeId>> adj_;
};

}  // namespace mcf
