#include "mcf/refine.hpp"

#include <cmath>

namespace mcf {

namespace {

// Tagged reference to an edge of the extended view.
struct ViewEdge {
    enum Kind : unsigned char { real, source_aux, sink_aux } kind;
    EdgeId e;     // real: edge id; source_aux: target x; sink_aux: tail v
};

void check_view_feasible(const ApproxView& view, const Prices& p) {
    const MultiGraph& g = view.graph();
    VertexId s = view.source(), t = view.sink();
    for (EdgeId e = 0; e < g.num_edge_ids(); ++e) {
        if (!view.residual(e)) continue;
        Price w = view.c_prime(e) - p[static_cast<size_t>(g.tail(e))] +
                  p[static_cast<size_t>(g.head(e))];
        MCF_CHECK(w >= 0, "feasibility scan: negative reduced residual edge");
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        Price wt = view.sink_edge_cost(v) - p[static_cast<size_t>(v)] +
                   p[static_cast<size_t>(t)];
        MCF_CHECK(wt >= 0, "feasibility scan: negative reduced v->t edge");
        if (view.source_edge(v)) {
            Price ws = -p[static_cast<size_t>(s)] + p[static_cast<size_t>(v)];
            MCF_CHECK(ws >= 0, "feasibility scan: negative reduced s->x edge");
        }
    }
}

}  // namespace

PhaseInvariants::PhaseInvariants(const MultiGraph& g, Price eps)
    : m_(g.num_original()), eps_(eps) {}

void PhaseInvariants::on_phase_start(Price delta, std::int64_t psi) {
    MCF_CHECK(delta > prev_delta_, "Delta did not strictly increase across phases");
    MCF_CHECK(delta % (eps_ / 2) == 0, "Delta not a multiple of eps/2");
    prev_delta_ = delta;
    ++phases_;
    MCF_CHECK(phases_ <= 8.0 * std::sqrt(static_cast<double>(m_)) + 2.0,
              "phase count exceeded 8*sqrt(m) + 2");
    if (psi > 0) {
        __int128 lhs = static_cast<__int128>(psi) * delta;
        __int128 rhs = static_cast<__int128>(6) * eps_ * m_;
        MCF_CHECK(lhs <= rhs, "total-excess bound psi * Delta <= 6*eps*m violated");
    }
}

void PhaseInvariants::on_paths(std::int64_t paths, std::int64_t edges) {
    paths_ += paths;
    path_edges_ += edges;
}

void PhaseInvariants::on_done() const {
    if (m_ == 0) return;
    double bound = 4.0 * static_cast<double>(m_) +
                   6.0 * static_cast<double>(m_) * (1.0 + std::log(static_cast<double>(m_)));
    MCF_CHECK(static_cast<double>(path_edges_) <= bound,
              "total augmenting-path length exceeded 4m + 6m(1 + ln m)");
}

std::vector<ZeroPath> maximal_zero_paths(const ApproxView& view, const Prices& p,
                                         FlowState& f) {
    const MultiGraph& g = view.graph();
    const int n = g.num_vertices();
    const VertexId s = view.source(), t = view.sink();

    std::vector<char> dead(static_cast<size_t>(n) + 2, 0);  // the W set
    // Scan cursor per real vertex: positions [0, deg) walk the out-adjacency,
    // position deg is the auxiliary v->t edge. For s the cursor walks the
    // vertex ids, emitting s->x edges at excess vertices. Auxiliary edges
    // are not consumed on use: they carry the remaining excess / deficit of
    // their vertex, which the live checks against f account for.
    std::vector<std::uint32_t> cursor(static_cast<size_t>(n), 0);
    VertexId s_cursor = 0;

    auto next_tight_edge = [&](VertexId y, ViewEdge& out) -> bool {
        if (y == s) {
            for (; s_cursor < n; ++s_cursor) {
                VertexId x = s_cursor;
                if (!view.source_edge(x) || dead[static_cast<size_t>(x)]) continue;
                if (p[static_cast<size_t>(x)] != p[static_cast<size_t>(s)]) continue;
                out = {ViewEdge::source_aux, x};
                return true;  // cursor stays: the edge lives while x has excess
            }
            return false;
        }
        auto adj = g.out_edges(y);
        auto deg = static_cast<std::uint32_t>(adj.size());
        std::uint32_t& cur = cursor[static_cast<size_t>(y)];
        for (; cur < deg; ++cur) {
            EdgeId e = adj[cur];
            if (!view.residual(e)) continue;
            VertexId v = g.head(e);
            if (dead[static_cast<size_t>(v)]) continue;
            if (view.c_prime(e) - p[static_cast<size_t>(y)] + p[static_cast<size_t>(v)] != 0)
                continue;
            out = {ViewEdge::real, e};
            ++cur;
            return true;
        }
        if (cur == deg &&
            view.sink_edge_cost(y) - p[static_cast<size_t>(y)] + p[static_cast<size_t>(t)] == 0) {
            // A zero-reduced v->t edge must be a genuine deficit edge; tight
            // big-cost edges are unreachable from s.
            MCF_CHECK(view.flow().excess(y) < 0,
                      "zero-reduced path reached a big-cost sink edge");
            out = {ViewEdge::sink_aux, y};
            return true;  // not consumed; vanishes once y leaves D
        }
        return false;
    };

    std::vector<ZeroPath> paths;
    std::vector<ViewEdge> stack;
    while (!dead[static_cast<size_t>(s)]) {
        stack.clear();
        VertexId y = s;
        while (y != t) {
            ViewEdge ve{};
            if (next_tight_edge(y, ve)) {
                stack.push_back(ve);
                y = ve.kind == ViewEdge::real ? g.head(ve.e)
                    : ve.kind == ViewEdge::source_aux ? static_cast<VertexId>(ve.e)
                                                      : t;
            } else {
                dead[static_cast<size_t>(y)] = 1;
                if (stack.empty()) break;  // y == s
                const ViewEdge& last = stack.back();
                y = last.kind == ViewEdge::real ? g.tail(last.e) : s;
                stack.pop_back();
            }
        }
        if (y != t) break;
        ZeroPath path;
        for (const ViewEdge& ve : stack) {
            if (ve.kind == ViewEdge::real) path.edges.push_back(ve.e);
            else if (ve.kind == ViewEdge::source_aux) path.from_excess = ve.e;
            else path.to_deficit = ve.e;
        }
        MCF_CHECK(!path.edges.empty() && path.from_excess >= 0 && path.to_deficit >= 0,
                  "malformed zero path");
        MCF_CHECK(f.excess(path.from_excess) > 0 && f.excess(path.to_deficit) < 0,
                  "zero path endpoints are not excess/deficit vertices");
        // Send immediately: the tight subgraph only shrinks (reverses of
        // tight edges have positive reduced cost), so the dead set stays
        // valid and the final state has no tight s->t path left.
        f.send(path.edges);
        paths.push_back(std::move(path));
    }
    return paths;
}

Prices refine(const MultiGraph& g, const CostScale& cs, FlowState& f, const Prices& p0,
              Price eps, const RefineOptions& opt, RefineStats* stats) {
    const int n = g.num_vertices();
    MCF_CHECK(f.is_circulation(), "refine: f0 must be a circulation");
    ApproxView view(g, f, p0, cs.shift, eps);

    // Saturate every residual edge that is negative under the reduced costs;
    // afterwards every residual edge has nonnegative reduced cost, so the
    // zero price vector is feasible for the extended view.
    {
        std::vector<EdgeId> sat;
        for (EdgeId e = 0; e < g.num_edge_ids(); ++e) {
            Price c = view.reduced_cost(e);
            MCF_CHECK(!f.residual(e) || c >= -2 * eps, "refine: f0 not 2*eps-optimal wrt p0");
            if (f.residual(e) && c < 0) sat.push_back(e);
        }
        f.send(sat);
    }

    Prices p(static_cast<size_t>(n) + 2, 0);
    PhaseInvariants inv(g, eps);
    while (f.psi() > 0) {
        std::int64_t psi_before = f.psi();
        Price delta;
        if (opt.engine == Engine::dial) {
            if (opt.heavy_checks) {
                Prices probe = distances_to(view, p);
                Price want = probe[static_cast<size_t>(view.source())];
                delta = dial_distances_to(view, p);
                MCF_CHECK(delta == want, "dial and heap engines disagree on Delta");
                check_view_feasible(view, p);
            } else {
                delta = dial_distances_to(view, p);
            }
        } else {
            p = distances_to(view, p);
            delta = p[static_cast<size_t>(view.source())];
            MCF_CHECK(delta < kInf, "no X->D path although excess remains");
        }
        inv.on_phase_start(delta, psi_before);
        if (opt.heavy_checks && n <= 50) check_no_nonpositive_cycle(view);

        std::vector<ZeroPath> paths = maximal_zero_paths(view, p, f);
        MCF_CHECK(!paths.empty(), "phase found no zero-reduced path");
        std::int64_t edges = 0;
        for (const ZeroPath& path : paths)
            edges += static_cast<std::int64_t>(path.edges.size());
        inv.on_paths(static_cast<std::int64_t>(paths.size()), edges);
        if (opt.on_phase) {
            PhaseRecord rec;
            rec.phase = inv.phases() - 1;
            rec.eps = eps;
            rec.delta = delta;
            rec.psi_before = psi_before;
            rec.psi_after = f.psi();
            rec.paths = static_cast<int>(paths.size());
            rec.path_edges = edges;
            opt.on_phase(rec);
        }
    }
    inv.on_done();
    if (stats) {
        stats->phases = inv.phases();
        stats->paths = inv.paths();
        stats->path_edges = inv.path_edges();
    }

    Prices dist = distances_to(view, p);
    Prices out(static_cast<size_t>(n));
    for (VertexId v = 0; v < n; ++v) {
        MCF_CHECK(dist[static_cast<size_t>(v)] < kInf, "final distances left a vertex unreached");
        out[static_cast<size_t>(v)] = dist[static_cast<size_t>(v)] + p0[static_cast<size_t>(v)];
    }
    MCF_CHECK(is_eps_optimal(g, f, out, cs.shift, eps),
              "refine postcondition: result not eps-optimal");
    return out;
}

}  // namespace mcf
