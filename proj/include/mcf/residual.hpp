#pragma once

#include <vector>

#include "mcf/flow.hpp"
#include "mcf/graph.hpp"
#include "mcf/ints.hpp"
#include "mcf/scale.hpp"

namespace mcf {

// Price vector in scaled units. Extended views index the super-source at n
// and the super-sink at n+1.
using Prices = std::vector<Price>;

// View over (graph, flow) exposing the residual edge set E_f with the
// rounded cost c'(e) = round_to(c(e) + eps/2, eps/2), where c is the scaled
// cost reduced by a base price function (the p0 of the enclosing refine
// call). The extended form adds a super-source s and super-sink t:
//   - an edge v->t for every v, of cost 0 if v is a deficit vertex, else M,
//   - an edge s->x of cost 0 for every excess vertex x,
// with M = sum over all 2m edges of |c'(e)|, plus eps. Hence
// delta(s, t) = delta(X, D) under c' and every vertex can reach t.
class ApproxView {
public:
    ApproxView(const MultiGraph& g, const FlowState& f, const Prices& p0, int shift,
               Price eps)
        : g_(&g), f_(&f), p0_(&p0), shift_(shift), eps_(eps), half_(eps / 2) {
        MCF_CHECK(eps_ >= 2 && (eps_ & (eps_ - 1)) == 0, "eps must be a power of two >= 2");
        Price m = eps_;
        for (EdgeId e = 0; e < g.num_edge_ids(); ++e) {
            Price c = c_prime(e);
            m = checked_add(m, c < 0 ? -c : c);
        }
        big_cost_ = m;
        // The unreachable sentinel must dominate any legal distance (> n*M).
        checked_mul(static_cast<Price>(g.num_vertices()) + 2, big_cost_);
    }

    const MultiGraph& graph() const { return *g_; }
    const FlowState& flow() const { return *f_; }

    Price eps() const { return eps_; }
    Price half() const { return half_; }
    Price big_cost() const { return big_cost_; }

    int num_vertices() const { return g_->num_vertices() + 2; }
    VertexId source() const { return g_->num_vertices(); }
    VertexId sink() const { return g_->num_vertices() + 1; }

    // Scaled cost reduced by the base prices.
    Price reduced_cost(EdgeId e) const {
        return (static_cast<Price>(g_->cost(e)) << shift_) -
               (*p0_)[static_cast<size_t>(g_->tail(e))] +
               (*p0_)[static_cast<size_t>(g_->head(e))];
    }

    Price c_prime(EdgeId e) const { return round_to(reduced_cost(e) + half_, half_); }

    bool residual(EdgeId e) const { return f_->residual(e); }

    // Cost of the auxiliary edge v->t.
    Price sink_edge_cost(VertexId v) const {
        return f_->excess(v) < 0 ? 0 : big_cost_;
    }

    // The auxiliary edge s->x exists iff x is an excess vertex; its cost is 0.
    bool source_edge(VertexId x) const { return f_->excess(x) > 0; }

private:
    const MultiGraph* g_;
    const FlowState* f_;
    const Prices* p0_;
    int shift_;
    Price eps_, half_;
    Price big_cost_ = 0;  // M
};

inline Price reduced_cost(const MultiGraph& g, EdgeId e, const Prices& p, int shift) {
    return (static_cast<Price>(g.cost(e)) << shift) - p[static_cast<size_t>(g.tail(e))] +
           p[static_cast<size_t>(g.head(e))];
}

// True iff every residual edge has reduced cost >= -eps (in scaled units).
inline bool is_eps_optimal(const MultiGraph& g, const FlowState& f, const Prices& p,
                           int shift, Price eps) {
    for (EdgeId e = 0; e < g.num_edge_ids(); ++e)
        if (f.residual(e) && reduced_cost(g, e, p, shift) < -eps) return false;
    return true;
}

}  // namespace mcf
