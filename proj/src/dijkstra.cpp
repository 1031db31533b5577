#include "mcf/dijkstra.hpp"

#include <algorithm>
#include <queue>
#include <utility>

namespace mcf {

namespace {

// Relaxes, for a settled vertex v, every residual in-edge u->v of the
// extended view, invoking relax(u, reduced edge cost). In-edges of a real
// vertex v are the reverses of its out-adjacency; t additionally receives
// the auxiliary v->t edges and s->x edges are handled at their target x.
template <typename Relax>
void scan_in_edges(const ApproxView& view, const Prices& p, VertexId v, Relax&& relax) {
    const MultiGraph& g = view.graph();
    VertexId s = view.source(), t = view.sink();
    if (v == t) {
        for (VertexId u = 0; u < g.num_vertices(); ++u) {
            Price w = view.sink_edge_cost(u) - p[static_cast<size_t>(u)] +
                      p[static_cast<size_t>(t)];
            MCF_CHECK(w >= 0, "distances_to: price function infeasible on a v->t edge");
            relax(u, w);
        }
        return;
    }
    if (v == s) return;  // s has no in-edges
    for (EdgeId oe : g.out_edges(v)) {
        EdgeId e = MultiGraph::rev(oe);  // e = u -> v
        if (!view.residual(e)) continue;
        VertexId u = g.tail(e);
        Price w = view.c_prime(e) - p[static_cast<size_t>(u)] + p[static_cast<size_t>(v)];
        MCF_CHECK(w >= 0, "distances_to: price function infeasible on a residual edge");
        relax(u, w);
    }
    if (view.source_edge(v)) {
        Price w = -p[static_cast<size_t>(s)] + p[static_cast<size_t>(v)];
        MCF_CHECK(w >= 0, "distances_to: price function infeasible on an s->x edge");
        relax(s, w);
    }
}

}  // namespace

Prices distances_to(const ApproxView& view, const Prices& p) {
    const int n2 = view.num_vertices();
    VertexId t = view.sink();
    std::vector<Price> red(static_cast<size_t>(n2), kInf);
    std::vector<char> done(static_cast<size_t>(n2), 0);
    using Item = std::pair<Price, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    red[static_cast<size_t>(t)] = 0;
    pq.emplace(0, t);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (done[static_cast<size_t>(v)]) continue;
        done[static_cast<size_t>(v)] = 1;
        scan_in_edges(view, p, v, [&](VertexId u, Price w) {
            if (done[static_cast<size_t>(u)]) return;
            Price nd = d + w;
            if (nd < red[static_cast<size_t>(u)]) {
                red[static_cast<size_t>(u)] = nd;
                pq.emplace(nd, u);
            }
        });
    }
    Prices dist(static_cast<size_t>(n2), kInf);
    for (VertexId v = 0; v < n2; ++v)
        if (red[static_cast<size_t>(v)] < kInf)
            dist[static_cast<size_t>(v)] = red[static_cast<size_t>(v)] +
                                           p[static_cast<size_t>(v)] -
                                           p[static_cast<size_t>(t)];
    return dist;
}

Price dial_distances_to(const ApproxView& view, Prices& p) {
    const int n2 = view.num_vertices();
    VertexId s = view.source(), t = view.sink();
    MCF_CHECK(p[static_cast<size_t>(s)] == 0, "dial: p(s) must be 0");
    MCF_CHECK(p[static_cast<size_t>(t)] <= 0, "dial: p(t) must be <= 0");
    const Price half = view.half();
    // Reduced distances of settled vertices never exceed Delta, and
    // Delta/(eps/2) <= 12m by the total-excess bound, so a flat bucket
    // array of that many slots suffices; keys beyond it can never be
    // settled before s and go to an overflow bag that is never drained.
    const size_t nbuckets = 12 * static_cast<size_t>(view.graph().num_original()) + 2;
    std::vector<std::vector<VertexId>> buckets(nbuckets);
    std::vector<Price> red(static_cast<size_t>(n2), kInf);
    std::vector<char> done(static_cast<size_t>(n2), 0);
    red[static_cast<size_t>(t)] = 0;
    buckets[0].push_back(t);
    bool s_settled = false;
    for (size_t b = 0; b < nbuckets && !s_settled; ++b) {
        while (!buckets[b].empty() && !s_settled) {
            VertexId v = buckets[b].back();
            buckets[b].pop_back();
            if (done[static_cast<size_t>(v)] ||
                red[static_cast<size_t>(v)] != static_cast<Price>(b) * half)
                continue;
            done[static_cast<size_t>(v)] = 1;
            if (v == s) {
                s_settled = true;
                break;
            }
            scan_in_edges(view, p, v, [&](VertexId u, Price w) {
                if (done[static_cast<size_t>(u)]) return;
                MCF_DCHECK(w % half == 0, "dial: reduced cost not a multiple of eps/2");
                Price nd = red[static_cast<size_t>(v)] + w;
                if (nd < red[static_cast<size_t>(u)]) {
                    red[static_cast<size_t>(u)] = nd;
                    size_t nb = static_cast<size_t>(nd / half);
                    if (nb < nbuckets) buckets[nb].push_back(u);
                }
            });
        }
    }
    MCF_CHECK(s_settled, "dial: s not settled within the 12m bucket bound");
    Price delta = red[static_cast<size_t>(s)] - p[static_cast<size_t>(t)];
    for (VertexId v = 0; v < n2; ++v) {
        if (!done[static_cast<size_t>(v)]) continue;
        Price dist = red[static_cast<size_t>(v)] + p[static_cast<size_t>(v)] -
                     p[static_cast<size_t>(t)];
        p[static_cast<size_t>(v)] = dist - delta;
    }
    return delta;
}

void check_no_nonpositive_cycle(const ApproxView& view) {
    const MultiGraph& g = view.graph();
    int n = g.num_vertices();
    Price mult = 2 * static_cast<Price>(g.num_original()) + 1;
    std::vector<Price> dist(static_cast<size_t>(n), 0);
    for (int round = 0; round <= n; ++round) {
        bool changed = false;
        for (EdgeId e = 0; e < g.num_edge_ids(); ++e) {
            if (!view.residual(e)) continue;
            // c' remapped so a negative cycle exists iff some c' cycle <= 0
            Price w = view.c_prime(e) * mult - 1;
            VertexId u = g.tail(e), v = g.head(e);
            if (dist[static_cast<size_t>(u)] + w < dist[static_cast<size_t>(v)]) {
                dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + w;
                changed = true;
            }
        }
        if (!changed) return;
    }
    fail_invariant("approximate residual graph has a cycle of non-positive cost");
}

Prices bellman_ford_distances_to(const ApproxView& view) {
    const MultiGraph& g = view.graph();
    const int n2 = view.num_vertices();
    VertexId s = view.source(), t = view.sink();
    Prices dist(static_cast<size_t>(n2), kInf);
    dist[static_cast<size_t>(t)] = 0;
    for (int round = 0; round < n2; ++round) {
        bool changed = false;
        auto relax_to = [&](VertexId u, Price w, VertexId v) {
            if (dist[static_cast<size_t>(v)] >= kInf) return;
            Price nd = dist[static_cast<size_t>(v)] + w;
            if (nd < dist[static_cast<size_t>(u)]) {
                dist[static_cast<size_t>(u)] = nd;
                changed = true;
            }
        };
        for (VertexId u = 0; u < g.num_vertices(); ++u) relax_to(u, view.sink_edge_cost(u), t);
        for (EdgeId e = 0; e < g.num_edge_ids(); ++e)
            if (view.residual(e)) relax_to(g.tail(e), view.c_prime(e), g.head(e));
        for (VertexId x = 0; x < g.num_vertices(); ++x)
            if (view.source_edge(x)) relax_to(s, 0, x);
        if (!changed) break;
        MCF_CHECK(round < n2 - 1, "bellman_ford: negative cycle in approximate view");
    }
    return dist;
}

}  // namespace mcf
