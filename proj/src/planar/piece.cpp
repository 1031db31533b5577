#include "mcf/planar/piece.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "mcf/planar/smawk.hpp"

namespace mcf::planar {

PieceGraph build_piece_graph(const MultiGraph& g, const RDivision& div, int pid) {
    const Piece& piece = div.pieces[static_cast<size_t>(pid)];
    PieceGraph pg;
    pg.id = pid;
    pg.verts = piece.verts;
    for (size_t i = 0; i < pg.verts.size(); ++i)
        pg.local[pg.verts[i]] = static_cast<int>(i);
    pg.boundary_pos.assign(pg.verts.size(), -1);
    for (VertexId v : piece.boundary) {
        int lv = pg.local.at(v);
        pg.boundary_pos[static_cast<size_t>(lv)] = static_cast<int>(pg.boundary_local.size());
        pg.boundary_local.push_back(lv);
    }
    // Bundles: all multigraph edge ids (forward and reverse) whose support
    // edge is owned by this piece, grouped by directed local pair.
    std::map<std::pair<int, int>, std::vector<EdgeId>> grouped;
    for (EdgeId e = 0; e < g.num_edge_ids(); ++e) {
        int se = div.support.support_of[static_cast<size_t>(e)];
        if (se < 0 || div.owner[static_cast<size_t>(se)] != pid) continue;
        int u = pg.local.at(g.tail(e)), v = pg.local.at(g.head(e));
        grouped[{u, v}].push_back(e);
    }
    pg.out.assign(pg.verts.size(), {});
    pg.in.assign(pg.verts.size(), {});
    for (auto& [key, edges] : grouped) {
        std::sort(edges.begin(), edges.end(), [&](EdgeId a, EdgeId b) {
            if (g.cost(a) != g.cost(b)) return g.cost(a) < g.cost(b);
            return a < b;
        });
        int bid = static_cast<int>(pg.bundles.size());
        pg.bundles.push_back({key.first, key.second, std::move(edges)});
        pg.out[static_cast<size_t>(key.first)].push_back(bid);
        pg.in[static_cast<size_t>(key.second)].push_back(bid);
    }
    pg.single_hole = piece.single_hole;
    if (piece.single_hole && piece.hole_index >= 0) {
        for (VertexId v : piece.holes[static_cast<size_t>(piece.hole_index)])
            pg.hole_occ.push_back(pg.local.at(v));
    }
    return pg;
}

EdgeId bundle_representative(const Bundle& b, const FlowState& f) {
    for (EdgeId e : b.edges)
        if (f.residual(e)) return e;
    return -1;
}

namespace {

// Dijkstra inside P''_{f,i} from one source over bundle representatives and
// the interior auxiliary edges, with p_local as potential. Fills dist (true
// costs, kInf unreached) and optionally parent bundle/aux markers.
struct LocalDijkstra {
    const PieceGraph& pg;
    const ApproxView& view;
    const PieceState& st;
    std::vector<Price> dist;        // reduced
    std::vector<int> parent_bundle; // bundle id, or -2 aux s-edge, -3 aux t-edge
    std::vector<int> parent_vertex;

    LocalDijkstra(const PieceGraph& pg_, const ApproxView& view_, const PieceState& st_)
        : pg(pg_), view(view_), st(st_) {}

    Price pot(int lv) const { return st.p_local[static_cast<size_t>(lv)]; }

    bool interior(int lv) const {
        return lv < pg.nl() && pg.boundary_pos[static_cast<size_t>(lv)] < 0;
    }

    void run(int source) {
        const int n2 = pg.nl() + 2;
        dist.assign(static_cast<size_t>(n2), kInf);
        parent_bundle.assign(static_cast<size_t>(n2), -1);
        parent_vertex.assign(static_cast<size_t>(n2), -1);
        std::vector<char> done(static_cast<size_t>(n2), 0);
        using Item = std::pair<Price, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        dist[static_cast<size_t>(source)] = 0;
        pq.emplace(0, source);
        auto relax = [&](int to, Price w, int from, int bundle) {
            MCF_CHECK(w >= 0, "piece Dijkstra: negative reduced edge (p_local infeasible)");
            Price nd = dist[static_cast<size_t>(from)] + w;
            if (nd < dist[static_cast<size_t>(to)]) {
                dist[static_cast<size_t>(to)] = nd;
                parent_bundle[static_cast<size_t>(to)] = bundle;
                parent_vertex[static_cast<size_t>(to)] = from;
                pq.emplace(nd, to);
            }
        };
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (done[static_cast<size_t>(v)]) continue;
            done[static_cast<size_t>(v)] = 1;
            if (v == pg.s_local()) {
                // s -> x for interior excess vertices
                for (int lv = 0; lv < pg.nl(); ++lv) {
                    if (!interior(lv)) continue;
                    if (view.flow().excess(pg.verts[static_cast<size_t>(lv)]) <= 0) continue;
                    relax(lv, -pot(pg.s_local()) + pot(lv), v, -2);
                }
                continue;
            }
            if (v == pg.t_local()) continue;  // sink
            // real bundles out of v
            for (int bid : pg.out[static_cast<size_t>(v)]) {
                const Bundle& b = pg.bundles[static_cast<size_t>(bid)];
                EdgeId rep = bundle_representative(b, view.flow());
                if (rep < 0) continue;
                relax(b.to, view.c_prime(rep) - pot(v) + pot(b.to), v, bid);
            }
            // interior v -> t auxiliary edge
            if (interior(v)) {
                Price c = view.sink_edge_cost(pg.verts[static_cast<size_t>(v)]);
                relax(pg.t_local(), c - pot(v) + pot(pg.t_local()), v, -3);
            }
        }
    }

    Price true_dist(int source, int target) const {
        if (dist[static_cast<size_t>(target)] >= kInf) return kInf;
        return dist[static_cast<size_t>(target)] + pot(source) - pot(target);
    }
};

}  // namespace

void rebuild_clique(const PieceGraph& pg, const ApproxView& view, PieceState& st) {
    const int side = pg.nb() + 2;
    st.clique.assign(static_cast<size_t>(side) * side, kInf);
    LocalDijkstra dij(pg, view, st);
    for (int bp = 0; bp < pg.nb(); ++bp) {
        dij.run(pg.boundary_local[static_cast<size_t>(bp)]);
        for (int cp = 0; cp < pg.nb(); ++cp)
            st.at(pg, bp, cp) =
                dij.true_dist(pg.boundary_local[static_cast<size_t>(bp)],
                              pg.boundary_local[static_cast<size_t>(cp)]);
        st.at(pg, bp, pg.t_idx()) =
            dij.true_dist(pg.boundary_local[static_cast<size_t>(bp)], pg.t_local());
    }
    dij.run(pg.s_local());
    for (int cp = 0; cp < pg.nb(); ++cp)
        st.at(pg, pg.s_idx(), cp) =
            dij.true_dist(pg.s_local(), pg.boundary_local[static_cast<size_t>(cp)]);
    st.at(pg, pg.s_idx(), pg.t_idx()) = dij.true_dist(pg.s_local(), pg.t_local());
    st.dirty = false;
}

Prices extend_prices(const PieceGraph& pg, const ApproxView& view, const PieceState& st,
                     std::span<const Price> pstar_of_boundary) {
    const int n2 = pg.nl() + 2;
    // Reverse Dijkstra to t over bundles and auxiliary edges, seeded with
    // the (possibly negative wrt p_local) labels of all t-adjacent arcs.
    std::vector<Price> red(static_cast<size_t>(n2), kInf);
    std::vector<char> done(static_cast<size_t>(n2), 0);
    using Item = std::pair<Price, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    auto pot = [&](int lv) { return st.p_local[static_cast<size_t>(lv)]; };
    auto seed = [&](int lv, Price label) {
        if (label < red[static_cast<size_t>(lv)]) {
            red[static_cast<size_t>(lv)] = label;
            pq.emplace(label, lv);
        }
    };
    // interior v -> t auxiliary edges
    for (int lv = 0; lv < pg.nl(); ++lv) {
        if (pg.boundary_pos[static_cast<size_t>(lv)] >= 0) continue;
        Price c = view.sink_edge_cost(pg.verts[static_cast<size_t>(lv)]);
        seed(lv, c - pot(lv) + pot(pg.t_local()));
    }
    // boundary exit edges b -> t of cost pstar(b)
    for (int bp = 0; bp < pg.nb(); ++bp) {
        int lv = pg.boundary_local[static_cast<size_t>(bp)];
        seed(lv, pstar_of_boundary[static_cast<size_t>(bp)] - pot(lv) + pot(pg.t_local()));
    }
    red[static_cast<size_t>(pg.t_local())] = 0;
    done[static_cast<size_t>(pg.t_local())] = 1;
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (done[static_cast<size_t>(v)]) continue;
        done[static_cast<size_t>(v)] = 1;
        if (v >= pg.nl()) continue;  // s has no in-edges
        // relax residual in-bundles u -> v
        for (int bid : pg.in[static_cast<size_t>(v)]) {
            const Bundle& b = pg.bundles[static_cast<size_t>(bid)];
            EdgeId rep = bundle_representative(b, view.flow());
            if (rep < 0) continue;
            Price w = view.c_prime(rep) - pot(b.from) + pot(v);
            MCF_CHECK(w >= 0, "extend_prices: negative reduced residual edge");
            Price nd = d + w;
            if (!done[static_cast<size_t>(b.from)] && nd < red[static_cast<size_t>(b.from)]) {
                red[static_cast<size_t>(b.from)] = nd;
                pq.emplace(nd, b.from);
            }
        }
        // s -> v when v is an interior excess vertex
        if (v < pg.nl() && pg.boundary_pos[static_cast<size_t>(v)] < 0 &&
            view.flow().excess(pg.verts[static_cast<size_t>(v)]) > 0) {
            Price w = -pot(pg.s_local()) + pot(v);
            MCF_CHECK(w >= 0, "extend_prices: negative reduced s-edge");
            Price nd = d + w;
            if (!done[static_cast<size_t>(pg.s_local())] &&
                nd < red[static_cast<size_t>(pg.s_local())]) {
                red[static_cast<size_t>(pg.s_local())] = nd;
                pq.emplace(nd, pg.s_local());
            }
        }
    }
    Prices out(static_cast<size_t>(n2), kInf);
    for (int lv = 0; lv < n2; ++lv) {
        if (red[static_cast<size_t>(lv)] >= kInf) continue;
        out[static_cast<size_t>(lv)] =
            red[static_cast<size_t>(lv)] + pot(lv) - pot(pg.t_local());
    }
    out[static_cast<size_t>(pg.t_local())] = 0;
    return out;
}

std::vector<EdgeId> translate_in_piece(const PieceGraph& pg, const ApproxView& view,
                                       const PieceState& st, int from_idx, int to_idx) {
    auto to_local = [&](int idx) {
        if (idx == pg.s_idx()) return pg.s_local();
        if (idx == pg.t_idx()) return pg.t_local();
        return pg.boundary_local[static_cast<size_t>(idx)];
    };
    int source = to_local(from_idx), target = to_local(to_idx);
    LocalDijkstra dij(pg, view, st);
    dij.run(source);
    MCF_CHECK(dij.true_dist(source, target) == st.at(pg, from_idx, to_idx),
              "translation distance differs from the clique entry");
    std::vector<EdgeId> edges;
    for (int v = target; v != source;) {
        int bid = dij.parent_bundle[static_cast<size_t>(v)];
        int pv = dij.parent_vertex[static_cast<size_t>(v)];
        MCF_CHECK(pv >= 0, "translation parent chain broken");
        if (bid >= 0) {
            EdgeId rep = bundle_representative(pg.bundles[static_cast<size_t>(bid)], view.flow());
            MCF_CHECK(rep >= 0, "translated bundle lost its representative");
            edges.push_back(rep);
        }
        v = pv;
    }
    std::reverse(edges.begin(), edges.end());
    return edges;
}

ReachData build_reach(const PieceGraph& pg, const PieceState& st,
                      std::span<const Price> pstar_of_boundary) {
    ReachData rd;
    rd.rows_of.assign(static_cast<size_t>(pg.nb()), {});
    rd.cols_of.assign(static_cast<size_t>(pg.nb()), {});
    if (pg.nb() == 0) return rd;

    auto reduced = [&](int rpos, int cpos) -> Price {
        Price d = st.at(pg, rpos, cpos);
        if (d >= kInf) return kInf;
        return d - pstar_of_boundary[static_cast<size_t>(rpos)] +
               pstar_of_boundary[static_cast<size_t>(cpos)];
    };

    auto emit_block = [&](const std::vector<int>& rows, const std::vector<int>& cols,
                          bool allow_monge) {
        if (rows.empty() || cols.empty()) return;
        ReachBlock blk;
        blk.rows = rows;
        blk.cols = cols;
        // The interval encoding needs the Monge property, which the facing
        // arcs of one hole provide only while every entry is finite.
        bool all_finite = allow_monge;
        if (allow_monge)
            for (int r : rows) {
                for (int c : cols)
                    if (st.at(pg, r, c) >= kInf) {
                        all_finite = false;
                        break;
                    }
                if (!all_finite) break;
            }
        auto entry = [&](int ri, int ci) {
            return reduced(blk.rows[static_cast<size_t>(ri)], blk.cols[static_cast<size_t>(ci)]);
        };
        if (all_finite) {
            blk.monge = true;
            int nr = static_cast<int>(rows.size()), nc = static_cast<int>(cols.size());
            auto lmin = smawk_leftmost_row_minima(nr, nc, entry);
            auto rmin = smawk_rightmost_row_minima(nr, nc, entry);
            blk.lo.assign(rows.size(), 1);
            blk.hi.assign(rows.size(), 0);
            for (int ri = 0; ri < nr; ++ri) {
                if (entry(ri, lmin[static_cast<size_t>(ri)]) == 0) {
                    blk.lo[static_cast<size_t>(ri)] = lmin[static_cast<size_t>(ri)];
                    blk.hi[static_cast<size_t>(ri)] = rmin[static_cast<size_t>(ri)];
                    MCF_CHECK(entry(ri, rmin[static_cast<size_t>(ri)]) == 0,
                              "leftmost zero without rightmost zero");
                }
            }
            // column membership: cols with some zero entry (column minima of
            // the transposed view, also totally monotone)
            auto tentry = [&](int ci, int ri) { return entry(ri, ci); };
            auto cmin = smawk_leftmost_row_minima(nc, nr, tentry);
            std::vector<char> col_in(cols.size(), 0);
            for (int ci = 0; ci < nc; ++ci)
                col_in[static_cast<size_t>(ci)] =
                    tentry(ci, cmin[static_cast<size_t>(ci)]) == 0;
            int bid = static_cast<int>(rd.blocks.size());
            for (int ci = 0; ci < nc; ++ci)
                if (col_in[static_cast<size_t>(ci)]) {
                    blk.b_positions.push_back(ci);
                    rd.cols_of[static_cast<size_t>(cols[static_cast<size_t>(ci)])]
                        .emplace_back(bid, ci);
                }
            for (int ri = 0; ri < nr; ++ri)
                if (blk.lo[static_cast<size_t>(ri)] <= blk.hi[static_cast<size_t>(ri)])
                    rd.rows_of[static_cast<size_t>(rows[static_cast<size_t>(ri)])]
                        .emplace_back(bid, ri);
            rd.blocks.push_back(std::move(blk));
            return;
        }
        // dense fallback: explicit zero lists
        blk.monge = false;
        blk.zero_cols.assign(rows.size(), {});
        int bid = static_cast<int>(rd.blocks.size());
        std::vector<char> col_in(cols.size(), 0);
        for (size_t ri = 0; ri < rows.size(); ++ri) {
            for (size_t ci = 0; ci < cols.size(); ++ci) {
                Price v = entry(static_cast<int>(ri), static_cast<int>(ci));
                MCF_CHECK(v >= 0, "negative reduced clique entry");
                if (v == 0) {
                    blk.zero_cols[ri].push_back(static_cast<int>(ci));
                    col_in[ci] = 1;
                }
            }
            if (!blk.zero_cols[ri].empty())
                rd.rows_of[static_cast<size_t>(rows[ri])].emplace_back(bid,
                                                                       static_cast<int>(ri));
        }
        for (size_t ci = 0; ci < cols.size(); ++ci)
            if (col_in[ci])
                rd.cols_of[static_cast<size_t>(cols[ci])].emplace_back(bid,
                                                                       static_cast<int>(ci));
        rd.blocks.push_back(std::move(blk));
    };

    if (pg.single_hole && !pg.hole_occ.empty()) {
        // Facing-arc recursion over the hole occurrence sequence. Occurrence
        // entries are boundary positions; a vertex occurring twice simply
        // appears in more blocks.
        std::vector<int> occ;
        for (int lv : pg.hole_occ)
            occ.push_back(pg.boundary_pos[static_cast<size_t>(lv)]);
        // split(lo, hi): arcs [lo, mid) and [mid, hi)
        struct Range {
            int lo, hi;
        };
        std::vector<Range> stack{{0, static_cast<int>(occ.size())}};
        while (!stack.empty()) {
            auto [lo, hi] = stack.back();
            stack.pop_back();
            if (hi - lo < 2) continue;
            int mid = (lo + hi) / 2;
            std::vector<int> a(occ.begin() + lo, occ.begin() + mid);
            std::vector<int> b(occ.begin() + mid, occ.begin() + hi);
            // facing orientation: rows ascending along the cycle, columns in
            // reversed cycle order make the finite blocks Monge
            std::vector<int> brev(b.rbegin(), b.rend());
            std::vector<int> arev(a.rbegin(), a.rend());
            emit_block(a, brev, true);
            emit_block(b, arev, true);
            stack.push_back({lo, mid});
            stack.push_back({mid, hi});
        }
    } else {
        // multi-hole (or hole-less) piece: one dense block over all pairs
        std::vector<int> all(static_cast<size_t>(pg.nb()));
        for (int i = 0; i < pg.nb(); ++i) all[static_cast<size_t>(i)] = i;
        emit_block(all, all, false);
    }
    return rd;
}

std::vector<char> zero_reach_bfs(const PieceGraph& pg, const ApproxView& view,
                                 const PieceState& st,
                                 std::span<const Price> pstar_of_boundary, int from_pos) {
    // Full price values on the piece via the extension, then BFS over tight
    // residual edges (any parallel member may be tight; tightness of the
    // representative is implied).
    Prices full = extend_prices(pg, view, st, pstar_of_boundary);
    for (int bp = 0; bp < pg.nb(); ++bp)
        full[static_cast<size_t>(pg.boundary_local[static_cast<size_t>(bp)])] =
            pstar_of_boundary[static_cast<size_t>(bp)];
    std::vector<char> seen(pg.verts.size(), 0);
    std::vector<int> stack{pg.boundary_local[static_cast<size_t>(from_pos)]};
    seen[static_cast<size_t>(stack[0])] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int bid : pg.out[static_cast<size_t>(v)]) {
            const Bundle& b = pg.bundles[static_cast<size_t>(bid)];
            if (seen[static_cast<size_t>(b.to)]) continue;
            EdgeId rep = bundle_representative(b, view.flow());
            if (rep < 0) continue;
            if (view.c_prime(rep) - full[static_cast<size_t>(v)] +
                    full[static_cast<size_t>(b.to)] !=
                0)
                continue;
            seen[static_cast<size_t>(b.to)] = 1;
            stack.push_back(b.to);
        }
    }
    std::vector<char> out(static_cast<size_t>(pg.nb()), 0);
    for (int bp = 0; bp < pg.nb(); ++bp)
        out[static_cast<size_t>(bp)] =
            bp != from_pos && seen[static_cast<size_t>(pg.boundary_local[static_cast<size_t>(bp)])];
    return out;
}

std::vector<char> decode_reach(const PieceGraph& pg, const ReachData& rd, int from_pos) {
    std::vector<char> out(static_cast<size_t>(pg.nb()), 0);
    for (auto [bid, ri] : rd.rows_of[static_cast<size_t>(from_pos)]) {
        const ReachBlock& blk = rd.blocks[static_cast<size_t>(bid)];
        if (blk.monge) {
            auto it = std::lower_bound(blk.b_positions.begin(), blk.b_positions.end(),
                                       blk.lo[static_cast<size_t>(ri)]);
            for (; it != blk.b_positions.end() && *it <= blk.hi[static_cast<size_t>(ri)]; ++it) {
                int cpos = blk.cols[static_cast<size_t>(*it)];
                if (cpos != from_pos) out[static_cast<size_t>(cpos)] = 1;
            }
        } else {
            for (int ci : blk.zero_cols[static_cast<size_t>(ri)]) {
                int cpos = blk.cols[static_cast<size_t>(ci)];
                if (cpos != from_pos) out[static_cast<size_t>(cpos)] = 1;
            }
        }
    }
    return out;
}

}  // namespace mcf::planar
