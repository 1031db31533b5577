#include "mcf/planar/planar_refine.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <unordered_set>

#include "mcf/dijkstra.hpp"
#include "mcf/planar/hooks.hpp"
#include "mcf/planar/rdivision.hpp"
#include "mcf/refine.hpp"

namespace mcf {

using planar::Bundle;
using planar::PieceGraph;
using planar::PieceState;
using planar::RDivision;
using planar::ReachBlock;
using planar::ReachData;

namespace {

// Union-find successor structure over [0, n]: erase(i) links i to i+1;
// first_alive(i) returns the smallest alive index >= i (n acts as "none").
struct SuccessorSet {
    std::vector<int> up;
    explicit SuccessorSet(int n = 0) : up(static_cast<size_t>(n) + 1) {
        for (size_t i = 0; i < up.size(); ++i) up[i] = static_cast<int>(i);
    }
    int first_alive(int i) {
        int r = i;
        while (up[static_cast<size_t>(r)] != r) r = up[static_cast<size_t>(r)];
        while (up[static_cast<size_t>(i)] != r) {
            int nx = up[static_cast<size_t>(i)];
            up[static_cast<size_t>(i)] = r;
            i = nx;
        }
        return r;
    }
    void erase(int i) { up[static_cast<size_t>(i)] = i + 1; }
};

// An edge of the compressed graph H''_f.
struct HEdge {
    enum Kind : unsigned char {
        clique,       // piece boundary -> boundary
        piece_s_b,    // s -> boundary through piece interior
        piece_b_t,    // boundary -> t through piece interior
        piece_s_t,    // s -> t inside one piece
        global_s_x,   // s -> x, x an excess boundary vertex
        global_v_t,   // v -> t, v a boundary deficit vertex
    } kind;
    int piece = -1;
    VertexId from = -1, to = -1;  // global ids (s/t use the view's ids)
};

struct PieceScan {
    ReachData rd;
    struct BlockScan {
        SuccessorSet alive;            // over b_positions indices
        std::vector<int> next_of_row;  // per row slot: index into b_positions
    };
    std::vector<BlockScan> blocks;
    std::vector<std::vector<int>> dense_cursor;  // per block: per row slot index
    std::vector<char> t_edge_done;               // per boundary position
    int s_cursor = 0;                            // over nb boundary exits, then s->t
};

struct PlanarRefiner {
    const MultiGraph& g;
    const CostScale& cs;
    const RDivision& div;
    const PlanarHooks* hooks;
    bool heavy;

    std::vector<PieceGraph> pgs;
    std::vector<VertexId> bverts;  // global boundary vertices, sorted

    // per-scale state
    FlowState* f = nullptr;
    std::unique_ptr<ApproxView> view;
    std::vector<PieceState> states;
    Prices pstar;  // size n+2, meaningful on boundary and s, t

    // per-phase scan state
    std::vector<char> dead;  // W
    std::vector<PieceScan> scans;
    std::vector<char> global_t_done;  // per vertex
    int s_global_cursor = 0;
    std::int64_t rebuild_events = 0;

    PlanarRefiner(const MultiGraph& g_, const CostScale& cs_, const RDivision& div_,
                  const PlanarHooks* hooks_, bool heavy_)
        : g(g_), cs(cs_), div(div_), hooks(hooks_), heavy(heavy_) {
        for (size_t pid = 0; pid < div.pieces.size(); ++pid)
            pgs.push_back(planar::build_piece_graph(g, div, static_cast<int>(pid)));
        for (VertexId v = 0; v < g.num_vertices(); ++v)
            if (div.is_boundary[static_cast<size_t>(v)]) bverts.push_back(v);
    }

    VertexId S() const { return view->source(); }
    VertexId T() const { return view->sink(); }

    std::vector<Price> boundary_prices(const PieceGraph& pg) const {
        std::vector<Price> out(pg.boundary_local.size());
        for (size_t bp = 0; bp < pg.boundary_local.size(); ++bp)
            out[bp] = pstar[static_cast<size_t>(
                pg.verts[static_cast<size_t>(pg.boundary_local[bp])])];
        return out;
    }

    // ---- compressed distances to t over H ----
    Prices ddg_distances() {
        const int n = g.num_vertices();
        Prices red(static_cast<size_t>(n) + 2, kInf);
        std::vector<char> done(static_cast<size_t>(n) + 2, 0);
        using Item = std::pair<Price, VertexId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        auto pot = [&](VertexId v) { return pstar[static_cast<size_t>(v)]; };
        auto relax = [&](VertexId u, Price w, VertexId v) {
            MCF_CHECK(w >= 0, "ddg: price function infeasible on a compressed edge");
            if (done[static_cast<size_t>(u)]) return;
            Price nd = red[static_cast<size_t>(v)] + w;
            if (nd < red[static_cast<size_t>(u)]) {
                red[static_cast<size_t>(u)] = nd;
                pq.emplace(nd, u);
            }
        };
        red[static_cast<size_t>(T())] = 0;
        pq.emplace(0, T());
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (done[static_cast<size_t>(v)]) continue;
            done[static_cast<size_t>(v)] = 1;
            if (v == T()) {
                // global y -> t edges for every boundary vertex
                for (VertexId y : bverts)
                    relax(y, view->sink_edge_cost(y) - pot(y) + pot(T()), v);
                // piece b -> t and s -> t columns
                for (size_t pid = 0; pid < pgs.size(); ++pid) {
                    const PieceGraph& pg = pgs[pid];
                    const PieceState& st = states[pid];
                    for (int bp = 0; bp < pg.nb(); ++bp) {
                        Price c = st.at(pg, bp, pg.t_idx());
                        if (c >= kInf) continue;
                        VertexId y = pg.verts[static_cast<size_t>(
                            pg.boundary_local[static_cast<size_t>(bp)])];
                        relax(y, c - pot(y) + pot(T()), v);
                    }
                    Price c = st.at(pg, pg.s_idx(), pg.t_idx());
                    if (c < kInf) relax(S(), c - pot(S()) + pot(T()), v);
                }
                continue;
            }
            if (v == S()) continue;
            // v is a boundary vertex: clique in-edges per containing piece
            for (int pid : div.pieces_of[static_cast<size_t>(v)]) {
                const PieceGraph& pg = pgs[static_cast<size_t>(pid)];
                auto it = pg.local.find(v);
                if (it == pg.local.end()) continue;
                int bp = pg.boundary_pos[static_cast<size_t>(it->second)];
                if (bp < 0) continue;
                const PieceState& st = states[static_cast<size_t>(pid)];
                for (int up = 0; up < pg.nb(); ++up) {
                    if (up == bp) continue;
                    Price c = st.at(pg, up, bp);
                    if (c >= kInf) continue;
                    VertexId u = pg.verts[static_cast<size_t>(
                        pg.boundary_local[static_cast<size_t>(up)])];
                    relax(u, c - pot(u) + pot(v), v);
                }
                Price c = st.at(pg, pg.s_idx(), bp);
                if (c < kInf) relax(S(), c - pot(S()) + pot(v), v);
            }
            if (f->excess(v) > 0) relax(S(), -pot(S()) + pot(v), v);
        }
        Prices out(static_cast<size_t>(n) + 2, kInf);
        for (size_t i = 0; i < out.size(); ++i)
            if (red[i] < kInf)
                out[i] = red[i] + pstar[i] - pstar[static_cast<size_t>(T())];
        return out;
    }

    // Forward single-source distances in the compressed graph, for the
    // translation-exactness hook. src is a boundary vertex or s.
    Prices h_distances_from(VertexId src) {
        const int n = g.num_vertices();
        Prices red(static_cast<size_t>(n) + 2, kInf);
        std::vector<char> done(static_cast<size_t>(n) + 2, 0);
        using Item = std::pair<Price, VertexId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        auto pot = [&](VertexId v) { return pstar[static_cast<size_t>(v)]; };
        auto relax = [&](VertexId u, VertexId v, Price w) {
            MCF_CHECK(w >= 0, "h query: infeasible potential");
            if (done[static_cast<size_t>(v)]) return;
            Price nd = red[static_cast<size_t>(u)] + w;
            if (nd < red[static_cast<size_t>(v)]) {
                red[static_cast<size_t>(v)] = nd;
                pq.emplace(nd, v);
            }
        };
        red[static_cast<size_t>(src)] = 0;
        pq.emplace(0, src);
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (done[static_cast<size_t>(v)]) continue;
            done[static_cast<size_t>(v)] = 1;
            if (v == T()) continue;
            if (v == S()) {
                for (VertexId x : bverts)
                    if (f->excess(x) > 0) relax(v, x, -pot(S()) + pot(x));
                for (size_t pid = 0; pid < pgs.size(); ++pid) {
                    const PieceGraph& pg = pgs[pid];
                    const PieceState& st = states[pid];
                    for (int cp = 0; cp < pg.nb(); ++cp) {
                        Price c = st.at(pg, pg.s_idx(), cp);
                        if (c >= kInf) continue;
                        VertexId w = pg.verts[static_cast<size_t>(
                            pg.boundary_local[static_cast<size_t>(cp)])];
                        relax(v, w, c - pot(S()) + pot(w));
                    }
                    Price c = st.at(pg, pg.s_idx(), pg.t_idx());
                    if (c < kInf) relax(v, T(), c - pot(S()) + pot(T()));
                }
                continue;
            }
            relax(v, T(), view->sink_edge_cost(v) - pot(v) + pot(T()));
            for (int pid : div.pieces_of[static_cast<size_t>(v)]) {
                const PieceGraph& pg = pgs[static_cast<size_t>(pid)];
                auto it = pg.local.find(v);
                if (it == pg.local.end()) continue;
                int bp = pg.boundary_pos[static_cast<size_t>(it->second)];
                if (bp < 0) continue;
                const PieceState& st = states[static_cast<size_t>(pid)];
                for (int cp = 0; cp < pg.nb(); ++cp) {
                    if (cp == bp) continue;
                    Price c = st.at(pg, bp, cp);
                    if (c >= kInf) continue;
                    VertexId w = pg.verts[static_cast<size_t>(
                        pg.boundary_local[static_cast<size_t>(cp)])];
                    relax(v, w, c - pot(v) + pot(w));
                }
                Price c = st.at(pg, bp, pg.t_idx());
                if (c < kInf) relax(v, T(), c - pot(v) + pot(T()));
            }
        }
        Prices out(static_cast<size_t>(n) + 2, kInf);
        for (size_t i = 0; i < out.size(); ++i)
            if (red[i] < kInf)
                out[i] = red[i] + pstar[static_cast<size_t>(src)] - pstar[i];
        return out;
    }

    // ---- per-phase scan state ----
    void build_scan(int pid) {
        const PieceGraph& pg = pgs[static_cast<size_t>(pid)];
        PieceScan& sc = scans[static_cast<size_t>(pid)];
        sc = PieceScan{};
        auto bp_prices = boundary_prices(pg);
        sc.rd = planar::build_reach(pg, states[static_cast<size_t>(pid)], bp_prices);
        sc.blocks.resize(sc.rd.blocks.size());
        sc.dense_cursor.resize(sc.rd.blocks.size());
        for (size_t b = 0; b < sc.rd.blocks.size(); ++b) {
            const ReachBlock& blk = sc.rd.blocks[b];
            if (blk.monge) {
                sc.blocks[b].alive = SuccessorSet(static_cast<int>(blk.b_positions.size()));
                sc.blocks[b].next_of_row.assign(blk.rows.size(), 0);
                for (size_t ri = 0; ri < blk.rows.size(); ++ri) {
                    if (blk.lo[ri] > blk.hi[ri]) continue;
                    sc.blocks[b].next_of_row[ri] = static_cast<int>(
                        std::lower_bound(blk.b_positions.begin(), blk.b_positions.end(),
                                         blk.lo[ri]) -
                        blk.b_positions.begin());
                }
            } else {
                sc.dense_cursor[b].assign(blk.rows.size(), 0);
            }
        }
        sc.t_edge_done.assign(static_cast<size_t>(pg.nb()), 0);
        sc.s_cursor = 0;
        // drop columns of vertices already dead in this phase
        for (int bp = 0; bp < pg.nb(); ++bp) {
            VertexId y =
                pg.verts[static_cast<size_t>(pg.boundary_local[static_cast<size_t>(bp)])];
            if (dead[static_cast<size_t>(y)]) erase_from_blocks(pid, bp);
        }
        if (hooks && hooks->on_reach)
            hooks->on_reach(pg, states[static_cast<size_t>(pid)], sc.rd, *view, bp_prices);
        if (heavy && pg.nb() <= 64) {
            for (int bp = 0; bp < pg.nb(); ++bp) {
                auto want = planar::zero_reach_bfs(pg, *view, states[static_cast<size_t>(pid)],
                                                   bp_prices, bp);
                auto got = planar::decode_reach(pg, sc.rd, bp);
                MCF_CHECK(want == got, "reach decode differs from zero-subgraph BFS");
            }
        }
    }

    void erase_from_blocks(int pid, int bp) {
        PieceScan& sc = scans[static_cast<size_t>(pid)];
        for (auto [bid, ci] : sc.rd.cols_of[static_cast<size_t>(bp)]) {
            const ReachBlock& blk = sc.rd.blocks[static_cast<size_t>(bid)];
            if (!blk.monge) continue;  // dense cursors check W live
            auto it = std::lower_bound(blk.b_positions.begin(), blk.b_positions.end(), ci);
            MCF_CHECK(it != blk.b_positions.end() && *it == ci, "column missing from B set");
            sc.blocks[static_cast<size_t>(bid)].alive.erase(
                static_cast<int>(it - blk.b_positions.begin()));
        }
    }

    void mark_dead(VertexId y) {
        dead[static_cast<size_t>(y)] = 1;
        if (y < g.num_vertices() && div.is_boundary[static_cast<size_t>(y)]) {
            for (int pid : div.pieces_of[static_cast<size_t>(y)]) {
                const PieceGraph& pg = pgs[static_cast<size_t>(pid)];
                auto it = pg.local.find(y);
                if (it == pg.local.end()) continue;
                int bp = pg.boundary_pos[static_cast<size_t>(it->second)];
                if (bp >= 0) erase_from_blocks(pid, bp);
            }
        }
    }

    // Next unscanned tight out-edge of y in H (Algorithm-style scan).
    bool next_edge(VertexId y, HEdge& out) {
        const Price ps = pstar[static_cast<size_t>(S())];
        const Price pt = pstar[static_cast<size_t>(T())];
        if (y == S()) {
            for (size_t k = 0; k < pgs.size(); ++k) {
                const PieceGraph& pg = pgs[k];
                const PieceState& st = states[k];
                PieceScan& sc = scans[k];
                while (sc.s_cursor <= pg.nb()) {
                    int cur = sc.s_cursor++;
                    if (cur < pg.nb()) {
                        VertexId b = pg.verts[static_cast<size_t>(
                            pg.boundary_local[static_cast<size_t>(cur)])];
                        if (dead[static_cast<size_t>(b)]) continue;
                        Price c = st.at(pg, pg.s_idx(), cur);
                        if (c >= kInf || c - ps + pstar[static_cast<size_t>(b)] != 0) continue;
                        out = {HEdge::piece_s_b, static_cast<int>(k), S(), b};
                        return true;
                    }
                    Price c = st.at(pg, pg.s_idx(), pg.t_idx());
                    if (c >= kInf || c - ps + pt != 0) continue;
                    out = {HEdge::piece_s_t, static_cast<int>(k), S(), T()};
                    return true;
                }
            }
            while (s_global_cursor < static_cast<int>(bverts.size())) {
                VertexId x = bverts[static_cast<size_t>(s_global_cursor)];
                if (dead[static_cast<size_t>(x)] || f->excess(x) <= 0 ||
                    pstar[static_cast<size_t>(x)] != ps) {
                    ++s_global_cursor;
                    continue;
                }
                // not consumed: the edge carries the remaining excess of x
                out = {HEdge::global_s_x, -1, S(), x};
                return true;
            }
            return false;
        }
        // y is a boundary vertex
        for (int pid : div.pieces_of[static_cast<size_t>(y)]) {
            const PieceGraph& pg = pgs[static_cast<size_t>(pid)];
            auto lit = pg.local.find(y);
            if (lit == pg.local.end()) continue;
            int bp = pg.boundary_pos[static_cast<size_t>(lit->second)];
            if (bp < 0) continue;
            PieceScan& sc = scans[static_cast<size_t>(pid)];
            const PieceState& st = states[static_cast<size_t>(pid)];
            for (auto [bid, ri] : sc.rd.rows_of[static_cast<size_t>(bp)]) {
                const ReachBlock& blk = sc.rd.blocks[static_cast<size_t>(bid)];
                if (blk.monge) {
                    auto& bs = sc.blocks[static_cast<size_t>(bid)];
                    for (;;) {
                        int idx = bs.alive.first_alive(bs.next_of_row[static_cast<size_t>(ri)]);
                        if (idx >= static_cast<int>(blk.b_positions.size())) break;
                        int pos = blk.b_positions[static_cast<size_t>(idx)];
                        if (pos > blk.hi[static_cast<size_t>(ri)]) break;
                        bs.next_of_row[static_cast<size_t>(ri)] = idx + 1;
                        int cpos = blk.cols[static_cast<size_t>(pos)];
                        if (cpos == bp) continue;  // occurrence self pair
                        VertexId w = pg.verts[static_cast<size_t>(
                            pg.boundary_local[static_cast<size_t>(cpos)])];
                        MCF_DCHECK(!dead[static_cast<size_t>(w)], "alive set kept a dead column");
                        out = {HEdge::clique, pid, y, w};
                        return true;
                    }
                } else {
                    auto& cur = sc.dense_cursor[static_cast<size_t>(bid)][static_cast<size_t>(ri)];
                    while (cur < static_cast<int>(blk.zero_cols[static_cast<size_t>(ri)].size())) {
                        int cpos = blk.cols[static_cast<size_t>(
                            blk.zero_cols[static_cast<size_t>(ri)][static_cast<size_t>(cur++)])];
                        if (cpos == bp) continue;
                        VertexId w = pg.verts[static_cast<size_t>(
                            pg.boundary_local[static_cast<size_t>(cpos)])];
                        if (dead[static_cast<size_t>(w)]) continue;
                        out = {HEdge::clique, pid, y, w};
                        return true;
                    }
                }
            }
            if (!sc.t_edge_done[static_cast<size_t>(bp)]) {
                sc.t_edge_done[static_cast<size_t>(bp)] = 1;
                Price c = st.at(pg, bp, pg.t_idx());
                if (c < kInf && c - pstar[static_cast<size_t>(y)] + pt == 0) {
                    out = {HEdge::piece_b_t, pid, y, T()};
                    return true;
                }
            }
        }
        if (!global_t_done[static_cast<size_t>(y)]) {
            if (view->sink_edge_cost(y) - pstar[static_cast<size_t>(y)] + pt == 0) {
                // not consumed: the edge carries the remaining deficit of y
                MCF_CHECK(f->excess(y) < 0, "tight big-cost sink edge reached from s");
                out = {HEdge::global_v_t, -1, y, T()};
                return true;
            }
            global_t_done[static_cast<size_t>(y)] = 1;
        }
        return false;
    }

    // One round of the compressed path scan; true iff a path was found and
    // the flow augmented along it.
    bool find_and_augment(std::int64_t* edge_count) {
        if (dead[static_cast<size_t>(S())]) return false;
        std::vector<HEdge> stack;
        VertexId y = S();
        while (y != T()) {
            HEdge e{};
            if (next_edge(y, e)) {
                stack.push_back(e);
                y = e.to;
            } else {
                mark_dead(y);
                if (stack.empty()) break;
                y = stack.back().from;
                stack.pop_back();
            }
        }
        if (y != T()) return false;

        // Translate the compressed path to real edges.
        std::vector<EdgeId> real;
        std::vector<int> affected;
        for (const HEdge& he : stack) {
            std::vector<EdgeId> part;
            const PieceGraph* pg = he.piece >= 0 ? &pgs[static_cast<size_t>(he.piece)] : nullptr;
            const PieceState* st =
                he.piece >= 0 ? &states[static_cast<size_t>(he.piece)] : nullptr;
            switch (he.kind) {
                case HEdge::clique:
                    part = planar::translate_in_piece(
                        *pg, *view, *st,
                        pg->boundary_pos[static_cast<size_t>(pg->local.at(he.from))],
                        pg->boundary_pos[static_cast<size_t>(pg->local.at(he.to))]);
                    break;
                case HEdge::piece_s_b:
                    part = planar::translate_in_piece(
                        *pg, *view, *st, pg->s_idx(),
                        pg->boundary_pos[static_cast<size_t>(pg->local.at(he.to))]);
                    break;
                case HEdge::piece_b_t:
                    part = planar::translate_in_piece(
                        *pg, *view, *st,
                        pg->boundary_pos[static_cast<size_t>(pg->local.at(he.from))],
                        pg->t_idx());
                    break;
                case HEdge::piece_s_t:
                    part = planar::translate_in_piece(*pg, *view, *st, pg->s_idx(), pg->t_idx());
                    break;
                case HEdge::global_s_x:
                case HEdge::global_v_t:
                    break;
            }
            if (he.piece >= 0 && !part.empty()) affected.push_back(he.piece);
            real.insert(real.end(), part.begin(), part.end());
        }
        MCF_CHECK(!real.empty(), "translated augmenting path has no real edges");
        {
            // simplicity and continuity of the concatenation
            std::unordered_set<EdgeId> seen;
            for (size_t i = 0; i < real.size(); ++i) {
                MCF_CHECK(seen.insert(real[i]).second,
                          "translated path repeats a residual edge");
                if (i > 0)
                    MCF_CHECK(g.head(real[i - 1]) == g.tail(real[i]),
                              "translated path is not a path");
            }
            MCF_CHECK(f->excess(g.tail(real.front())) > 0,
                      "translated path does not start at an excess vertex");
            MCF_CHECK(f->excess(g.head(real.back())) < 0,
                      "translated path does not end at a deficit vertex");
        }
        std::sort(affected.begin(), affected.end());
        affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
        {
            std::unordered_set<VertexId> on_path_boundary;
            for (EdgeId e : real) {
                if (div.is_boundary[static_cast<size_t>(g.tail(e))])
                    on_path_boundary.insert(g.tail(e));
                if (div.is_boundary[static_cast<size_t>(g.head(e))])
                    on_path_boundary.insert(g.head(e));
            }
            MCF_CHECK(affected.size() <= 1 + 2 * on_path_boundary.size(),
                      "affected piece count exceeds 1 + 2 * boundary-on-path");
        }

        // Per-piece price adoption happens against the pre-augmentation
        // state; then send, then rebuild cliques and reach data.
        std::vector<Prices> new_p(affected.size());
        for (size_t i = 0; i < affected.size(); ++i) {
            const PieceGraph& pg = pgs[static_cast<size_t>(affected[i])];
            new_p[i] = planar::extend_prices(pg, *view, states[static_cast<size_t>(affected[i])],
                                             boundary_prices(pg));
        }
        f->send(real);
        if (edge_count) *edge_count += static_cast<std::int64_t>(real.size());
        for (size_t i = 0; i < affected.size(); ++i) {
            int pid = affected[i];
            states[static_cast<size_t>(pid)].p_local = std::move(new_p[i]);
            planar::rebuild_clique(pgs[static_cast<size_t>(pid)], *view,
                                   states[static_cast<size_t>(pid)]);
            build_scan(pid);
            ++rebuild_events;
        }
        if (hooks && hooks->on_augment) hooks->on_augment(*view, real);
        return true;
    }

    // ---- one scale ----
    Prices refine_scale(FlowState& flow, const Prices& p0, Price eps, RefineStats* stats,
                        const std::function<void(const PhaseRecord&)>& on_phase) {
        const int n = g.num_vertices();
        f = &flow;
        view = std::make_unique<ApproxView>(g, flow, p0, cs.shift, eps);
        MCF_CHECK(flow.is_circulation(), "refine: f0 must be a circulation");
        {
            std::vector<EdgeId> sat;
            for (EdgeId e = 0; e < g.num_edge_ids(); ++e) {
                Price c = view->reduced_cost(e);
                MCF_CHECK(!flow.residual(e) || c >= -2 * eps,
                          "refine: f0 not 2*eps-optimal wrt p0");
                if (flow.residual(e) && c < 0) sat.push_back(e);
            }
            flow.send(sat);
            if (hooks && hooks->on_saturate) hooks->on_saturate(*view, sat);
        }
        pstar.assign(static_cast<size_t>(n) + 2, 0);
        states.assign(pgs.size(), PieceState{});
        for (size_t k = 0; k < pgs.size(); ++k) {
            states[k].p_local.assign(static_cast<size_t>(pgs[k].nl()) + 2, 0);
            states[k].dirty = true;
        }
        scans.assign(pgs.size(), PieceScan{});
        rebuild_events = 0;
        std::int64_t paths_total = 0;

        PhaseInvariants inv(g, eps);
        while (flow.psi() > 0) {
            for (size_t k = 0; k < pgs.size(); ++k)
                if (states[k].dirty) planar::rebuild_clique(pgs[k], *view, states[k]);
            Prices nd = ddg_distances();
            Price delta = nd[static_cast<size_t>(S())];
            MCF_CHECK(delta < kInf, "no excess-to-deficit path in the compressed graph");
            std::int64_t psi_before = flow.psi();
            inv.on_phase_start(delta, psi_before);
            pstar = std::move(nd);
            if (hooks && hooks->on_distances) hooks->on_distances(*view, pstar);
            if (hooks && hooks->on_h_query)
                hooks->on_h_query(*view, bverts,
                                  [this](VertexId v) { return h_distances_from(v); });
            if (heavy) {
                Prices full = bellman_ford_distances_to(*view);
                for (VertexId b : bverts)
                    MCF_CHECK(pstar[static_cast<size_t>(b)] == full[static_cast<size_t>(b)],
                              "compressed distances differ from the full graph");
                MCF_CHECK(pstar[static_cast<size_t>(S())] == full[static_cast<size_t>(S())],
                          "compressed Delta differs from the full graph");
                MCF_CHECK(pstar[static_cast<size_t>(T())] == full[static_cast<size_t>(T())],
                          "compressed sink distance differs from the full graph");
                if (n <= 50) check_no_nonpositive_cycle(*view);
            }
            dead.assign(static_cast<size_t>(n) + 2, 0);
            global_t_done.assign(static_cast<size_t>(n) + 2, 0);
            s_global_cursor = 0;
            for (size_t k = 0; k < pgs.size(); ++k) build_scan(static_cast<int>(k));
            std::int64_t paths = 0, edges = 0;
            while (find_and_augment(&edges)) ++paths;
            MCF_CHECK(paths > 0, "phase found no compressed zero path");
            inv.on_paths(paths, edges);
            paths_total += paths;
            if (on_phase) {
                PhaseRecord rec;
                rec.phase = inv.phases() - 1;
                rec.eps = eps;
                rec.delta = delta;
                rec.psi_before = psi_before;
                rec.psi_after = flow.psi();
                rec.paths = static_cast<int>(paths);
                rec.path_edges = edges;
                on_phase(rec);
            }
        }
        inv.on_done();
        {
            double bound = 4.0 * g.num_original() +
                           6.0 * g.num_original() *
                               (1.0 + std::log(std::max(1.0,
                                                        static_cast<double>(g.num_original())))) +
                           static_cast<double>(paths_total);
            MCF_CHECK(static_cast<double>(rebuild_events) <= bound,
                      "affected-piece rebuild count exceeds its bound");
        }
        if (stats) {
            stats->phases = inv.phases();
            stats->paths = inv.paths();
            stats->path_edges = inv.path_edges();
        }

        // final prices: compressed distances, extended into every piece
        for (size_t k = 0; k < pgs.size(); ++k)
            if (states[k].dirty) planar::rebuild_clique(pgs[k], *view, states[k]);
        pstar = ddg_distances();
        Prices out(static_cast<size_t>(n), 0);
        std::vector<char> assigned(static_cast<size_t>(n), 0);
        for (VertexId b : bverts) {
            MCF_CHECK(pstar[static_cast<size_t>(b)] < kInf, "boundary vertex unreached");
            out[static_cast<size_t>(b)] = pstar[static_cast<size_t>(b)] +
                                          p0[static_cast<size_t>(b)];
            assigned[static_cast<size_t>(b)] = 1;
        }
        for (size_t k = 0; k < pgs.size(); ++k) {
            const PieceGraph& pg = pgs[k];
            Prices ext = planar::extend_prices(pg, *view, states[k], boundary_prices(pg));
            for (int lv = 0; lv < pg.nl(); ++lv) {
                if (pg.boundary_pos[static_cast<size_t>(lv)] >= 0) continue;
                VertexId v = pg.verts[static_cast<size_t>(lv)];
                MCF_CHECK(!assigned[static_cast<size_t>(v)],
                          "interior vertex owned by two pieces");
                MCF_CHECK(ext[static_cast<size_t>(lv)] < kInf, "interior vertex unreached");
                out[static_cast<size_t>(v)] = ext[static_cast<size_t>(lv)] +
                                              p0[static_cast<size_t>(v)];
                assigned[static_cast<size_t>(v)] = 1;
            }
        }
        for (VertexId v = 0; v < n; ++v)
            MCF_CHECK(assigned[static_cast<size_t>(v)], "vertex missing from the extension");
        MCF_CHECK(is_eps_optimal(g, flow, out, cs.shift, eps),
                  "refine postcondition: result not eps-optimal");
        return out;
    }
};

}  // namespace

Solution planar_min_cost_circulation(const MultiGraph& g, const SolveOptions& opt,
                                     const PlanarHooks* hooks) {
    int r = opt.planar_r > 0 ? opt.planar_r
                             : planar::default_piece_size(g.num_vertices(), g.num_original());
    RDivision div = planar::build_r_division(g, r, opt.rotation);
    planar::validate_r_division(g, div);
    CostScale cs = CostScale::make(g);
    PlanarRefiner refiner(g, cs, div, hooks, opt.heavy_checks);
    std::vector<PhaseRecord> trace;
    Solution sol = detail::run_scaling(
        g, opt,
        [&](FlowState& f, const Prices& p0, Price eps, RefineStats* stats, int scale_idx) {
            std::function<void(const PhaseRecord&)> cb;
            if (opt.trace_phases)
                cb = [&trace, scale_idx](const PhaseRecord& rec) {
                    PhaseRecord r2 = rec;
                    r2.scale = scale_idx;
                    trace.push_back(r2);
                };
            return refiner.refine_scale(f, p0, eps, stats, cb);
        });
    sol.phase_trace = std::move(trace);
    return sol;
}

Solution planar_min_cost_circulation_with_division(const MultiGraph& g, const SolveOptions& opt,
                                                   const planar::RDivision& div,
                                                   const PlanarHooks* hooks) {
    CostScale cs = CostScale::make(g);
    PlanarRefiner refiner(g, cs, div, hooks, opt.heavy_checks);
    return detail::run_scaling(
        g, opt,
        [&](FlowState& f, const Prices& p0, Price eps, RefineStats* stats, int) {
            return refiner.refine_scale(f, p0, eps, stats, nullptr);
        });
}

}  // namespace mcf
