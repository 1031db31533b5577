#pragma once

#include <span>
#include <vector>

#include "mcf/graph.hpp"
#include "mcf/ints.hpp"

namespace mcf {

// Antisymmetric integral flow with excess bookkeeping.
//
// f(e) = -f(rev(e)) holds structurally: only the value of the original edge
// is stored. excess(v) is the net flow into v; X and D are the sets of
// vertices with positive / negative excess and psi() the total excess.
class FlowState {
public:
    explicit FlowState(const MultiGraph& g)
        : g_(&g),
          f_(static_cast<size_t>(g.num_original()), 0),
          exc_(static_cast<size_t>(g.num_vertices()), 0) {}

    const MultiGraph& graph() const { return *g_; }

    int flow(EdgeId e) const {
        int v = f_[e >> 1];
        return (e & 1) ? -v : v;
    }

    bool residual(EdgeId e) const { return flow(e) < g_->capacity(e); }

    std::int64_t excess(VertexId v) const { return exc_[static_cast<size_t>(v)]; }
    std::int64_t psi() const { return psi_; }

    std::vector<VertexId> excess_vertices() const {
        std::vector<VertexId> xs;
        for (VertexId v = 0; v < g_->num_vertices(); ++v)
            if (exc_[static_cast<size_t>(v)] > 0) xs.push_back(v);
        return xs;
    }

    std::vector<VertexId> deficit_vertices() const {
        std::vector<VertexId> ds;
        for (VertexId v = 0; v < g_->num_vertices(); ++v)
            if (exc_[static_cast<size_t>(v)] < 0) ds.push_back(v);
        return ds;
    }

    // Sends one unit through e: f(e) += 1, f(rev(e)) -= 1.
    // Pre: e is residual. Self loops leave all excesses unchanged.
    void send_edge(EdgeId e) {
        MCF_CHECK(residual(e), "send_flow: capacity exceeded");
        int delta = (e & 1) ? -1 : 1;
        f_[e >> 1] += delta;
        bump(g_->head(e), +1);
        bump(g_->tail(e), -1);
    }

    // Sends one unit through every edge of es. Pre: all residual and es
    // contains no edge together with its reverse.
    void send(std::span<const EdgeId> es) {
        for (EdgeId e : es) send_edge(e);
    }

    // Raw cost of the flow, sum over original edges of f(e) * cost(e).
    std::int64_t raw_cost() const {
        std::int64_t c = 0;
        for (EdgeId o = 0; o < g_->num_original(); ++o)
            c += static_cast<std::int64_t>(f_[o]) * g_->cost(2 * o);
        return c;
    }

    bool is_circulation() const { return psi_ == 0 && deficit_vertices().empty(); }

    // Full recomputation of the excess bookkeeping; debug / test aid.
    void verify() const {
        std::vector<std::int64_t> exc(exc_.size(), 0);
        for (EdgeId o = 0; o < g_->num_original(); ++o) {
            EdgeId e = 2 * o;
            MCF_CHECK(flow(e) == -flow(MultiGraph::rev(e)), "flow antisymmetry broken");
            MCF_CHECK(flow(e) >= 0 && flow(e) <= 1, "flow out of capacity bounds");
            exc[static_cast<size_t>(g_->head(e))] += flow(e);
            exc[static_cast<size_t>(g_->tail(e))] -= flow(e);
        }
        std::int64_t px = 0, pd = 0;
        for (size_t v = 0; v < exc.size(); ++v) {
            MCF_CHECK(exc[v] == exc_[v], "excess bookkeeping out of sync");
            if (exc[v] > 0) px += exc[v];
            if (exc[v] < 0) pd -= exc[v];
        }
        MCF_CHECK(px == psi_ && pd == psi_, "psi bookkeeping out of sync");
    }

private:
    void bump(VertexId v, int d) {
        std::int64_t& x = exc_[static_cast<size_t>(v)];
        if (d > 0) {
            if (x >= 0) ++psi_;
            ++x;
        } else {
            if (x >= 1) --psi_;
            --x;
        }
    }

    const MultiGraph* g_;
    std::vector<std::int8_t> f_;  // per original edge, in {0, 1}
    std::vector<std::int64_t> exc_;
    std::int64_t psi_ = 0;
};

}  // namespace mcf
