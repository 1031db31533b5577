#include "mcf/planar/embedding.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace mcf::planar {

namespace {

std::uint64_t pair_key(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

}  // namespace

std::vector<std::vector<int>> RotationSystem::faces() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(static_cast<size_t>(num_darts()), 0);
    for (int d0 = 0; d0 < num_darts(); ++d0) {
        if (seen[static_cast<size_t>(d0)]) continue;
        std::vector<int> face;
        int d = d0;
        do {
            seen[static_cast<size_t>(d)] = 1;
            face.push_back(d);
            d = face_next(d);
            MCF_CHECK(static_cast<size_t>(face.size()) <= static_cast<size_t>(num_darts()),
                      "face walk does not close");
        } while (d != d0);
        out.push_back(std::move(face));
    }
    return out;
}

void RotationSystem::validate() const {
    MCF_CHECK(static_cast<int>(entry.size()) == n, "entry table size mismatch");
    std::vector<char> seen(static_cast<size_t>(num_darts()), 0);
    int attached_total = 0;
    for (VertexId v = 0; v < n; ++v) {
        int d0 = entry[static_cast<size_t>(v)];
        if (d0 < 0) continue;
        int d = d0;
        do {
            MCF_CHECK(tail(d) == v, "rotation contains a dart of another vertex");
            MCF_CHECK(!seen[static_cast<size_t>(d)], "dart appears twice in rotations");
            MCF_CHECK(nxt[static_cast<size_t>(prv[static_cast<size_t>(d)])] == d &&
                          prv[static_cast<size_t>(nxt[static_cast<size_t>(d)])] == d,
                      "rotation links inconsistent");
            seen[static_cast<size_t>(d)] = 1;
            ++attached_total;
            d = nxt[static_cast<size_t>(d)];
            MCF_CHECK(attached_total <= num_darts(), "rotation cycle does not close");
        } while (d != d0);
    }
    MCF_CHECK(attached_total == num_darts(), "some darts are not attached");
    // Genus check: every component with edges satisfies v - e + f = 2 on its
    // own (the face walk of a component traces its own outer face), and
    // isolated vertices contribute v = 1 alone.
    std::vector<int> comp(static_cast<size_t>(n), -1);
    int with_edges = 0, isolated = 0;
    std::vector<VertexId> stack;
    for (VertexId r = 0; r < n; ++r) {
        if (comp[static_cast<size_t>(r)] >= 0) continue;
        if (entry[static_cast<size_t>(r)] < 0) {
            comp[static_cast<size_t>(r)] = -2;
            ++isolated;
            continue;
        }
        comp[static_cast<size_t>(r)] = with_edges;
        stack.push_back(r);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            int d0 = entry[static_cast<size_t>(v)];
            if (d0 < 0) continue;
            int d = d0;
            do {
                VertexId w = head(d);
                if (comp[static_cast<size_t>(w)] < 0) {
                    comp[static_cast<size_t>(w)] = with_edges;
                    stack.push_back(w);
                }
                d = nxt[static_cast<size_t>(d)];
            } while (d != d0);
        }
        ++with_edges;
    }
    int f = static_cast<int>(faces().size());
    MCF_CHECK(n - num_edges() + f == 2 * with_edges + isolated,
              "embedding is not genus zero");
}

// ---------------------------------------------------------------------------
// Left-right planarity test with embedding.
// ---------------------------------------------------------------------------

namespace {

struct Interval {
    int low = -1, high = -1;  // oriented edge ids
    bool empty() const { return low < 0 && high < 0; }
};

struct ConflictPair {
    Interval left, right;
    void swap_sides() { std::swap(left, right); }
};

struct LRState {
    int n;
    int m;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<std::vector<int>> adj;    // undirected adjacency: edge ids
    std::vector<int> height, parent_edge; // per vertex
    std::vector<VertexId> roots;
    std::vector<char> oriented;
    std::vector<VertexId> o_tail, o_head;
    std::vector<int> lowpt, lowpt2, nesting;
    std::vector<std::vector<int>> dg;     // oriented out-adjacency (edge ids)
    std::vector<std::vector<int>> odg;    // nesting-ordered out-adjacency
    std::vector<int> ref, side, lowpt_edge, stack_bottom;
    std::vector<ConflictPair> S;

    explicit LRState(int n_, std::vector<std::pair<VertexId, VertexId>> es)
        : n(n_),
          m(static_cast<int>(es.size())),
          edges(std::move(es)),
          adj(static_cast<size_t>(n_)),
          height(static_cast<size_t>(n_), -1),
          parent_edge(static_cast<size_t>(n_), -1),
          oriented(static_cast<size_t>(m), 0),
          o_tail(static_cast<size_t>(m), -1),
          o_head(static_cast<size_t>(m), -1),
          lowpt(static_cast<size_t>(m), 0),
          lowpt2(static_cast<size_t>(m), 0),
          nesting(static_cast<size_t>(m), 0),
          dg(static_cast<size_t>(n_)),
          odg(static_cast<size_t>(n_)),
          ref(static_cast<size_t>(m), -1),
          side(static_cast<size_t>(m), 1),
          lowpt_edge(static_cast<size_t>(m), -1),
          stack_bottom(static_cast<size_t>(m), 0) {
        for (int e = 0; e < m; ++e) {
            adj[static_cast<size_t>(edges[static_cast<size_t>(e)].first)].push_back(e);
            adj[static_cast<size_t>(edges[static_cast<size_t>(e)].second)].push_back(e);
        }
    }

    VertexId other(int e, VertexId v) const {
        auto [a, b] = edges[static_cast<size_t>(e)];
        return a == v ? b : a;
    }

    void dfs_orientation(VertexId root) {
        std::vector<VertexId> stack{root};
        std::vector<size_t> ind(static_cast<size_t>(n), 0);
        std::vector<char> init_done(static_cast<size_t>(m), 0);
        height[static_cast<size_t>(root)] = 0;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            int pe = parent_edge[static_cast<size_t>(v)];
            bool descended = false;
            while (ind[static_cast<size_t>(v)] < adj[static_cast<size_t>(v)].size()) {
                int e = adj[static_cast<size_t>(v)][ind[static_cast<size_t>(v)]];
                VertexId w = other(e, v);
                if (!init_done[static_cast<size_t>(e)]) {
                    if (oriented[static_cast<size_t>(e)]) {
                        ++ind[static_cast<size_t>(v)];
                        continue;
                    }
                    oriented[static_cast<size_t>(e)] = 1;
                    o_tail[static_cast<size_t>(e)] = v;
                    o_head[static_cast<size_t>(e)] = w;
                    dg[static_cast<size_t>(v)].push_back(e);
                    lowpt[static_cast<size_t>(e)] = height[static_cast<size_t>(v)];
                    lowpt2[static_cast<size_t>(e)] = height[static_cast<size_t>(v)];
                    if (height[static_cast<size_t>(w)] < 0) {  // tree edge
                        parent_edge[static_cast<size_t>(w)] = e;
                        height[static_cast<size_t>(w)] = height[static_cast<size_t>(v)] + 1;
                        init_done[static_cast<size_t>(e)] = 1;
                        stack.push_back(v);
                        stack.push_back(w);
                        descended = true;
                        break;
                    }
                    lowpt[static_cast<size_t>(e)] = height[static_cast<size_t>(w)];  // back edge
                }
                nesting[static_cast<size_t>(e)] =
                    2 * lowpt[static_cast<size_t>(e)] +
                    (lowpt2[static_cast<size_t>(e)] < height[static_cast<size_t>(v)] ? 1 : 0);
                if (pe >= 0) {
                    if (lowpt[static_cast<size_t>(e)] < lowpt[static_cast<size_t>(pe)]) {
                        lowpt2[static_cast<size_t>(pe)] = std::min(
                            lowpt[static_cast<size_t>(pe)], lowpt2[static_cast<size_t>(e)]);
                        lowpt[static_cast<size_t>(pe)] = lowpt[static_cast<size_t>(e)];
                    } else if (lowpt[static_cast<size_t>(e)] > lowpt[static_cast<size_t>(pe)]) {
                        lowpt2[static_cast<size_t>(pe)] = std::min(
                            lowpt2[static_cast<size_t>(pe)], lowpt[static_cast<size_t>(e)]);
                    } else {
                        lowpt2[static_cast<size_t>(pe)] = std::min(
                            lowpt2[static_cast<size_t>(pe)], lowpt2[static_cast<size_t>(e)]);
                    }
                }
                ++ind[static_cast<size_t>(v)];
            }
            (void)descended;
        }
    }

    bool conflicting(const Interval& i, int e) const {
        return !i.empty() && lowpt[static_cast<size_t>(i.high)] > lowpt[static_cast<size_t>(e)];
    }

    int lowest(const ConflictPair& p) const {
        MCF_CHECK(!(p.left.empty() && p.right.empty()), "empty conflict pair on stack");
        if (p.left.empty()) return lowpt[static_cast<size_t>(p.right.low)];
        if (p.right.empty()) return lowpt[static_cast<size_t>(p.left.low)];
        return std::min(lowpt[static_cast<size_t>(p.left.low)],
                        lowpt[static_cast<size_t>(p.right.low)]);
    }

    bool add_constraints(int ei, int pe) {
        ConflictPair p;
        // Merge the return edges of ei into p.right.
        do {
            ConflictPair q = S.back();
            S.pop_back();
            if (!q.left.empty()) q.swap_sides();
            if (!q.left.empty()) return false;
            if (lowpt[static_cast<size_t>(q.right.low)] > lowpt[static_cast<size_t>(pe)]) {
                if (p.right.empty()) p.right.high = q.right.high;
                else ref[static_cast<size_t>(p.right.low)] = q.right.high;
                p.right.low = q.right.low;
            } else {
                ref[static_cast<size_t>(q.right.low)] = lowpt_edge[static_cast<size_t>(pe)];
            }
        } while (static_cast<int>(S.size()) != stack_bottom[static_cast<size_t>(ei)]);
        // Merge conflicting return edges of earlier siblings into p.left.
        while (!S.empty() && (conflicting(S.back().left, ei) || conflicting(S.back().right, ei))) {
            ConflictPair q = S.back();
            S.pop_back();
            if (conflicting(q.right, ei)) q.swap_sides();
            if (conflicting(q.right, ei)) return false;
            if (p.right.low >= 0) ref[static_cast<size_t>(p.right.low)] = q.right.high;
            if (q.right.low >= 0) p.right.low = q.right.low;
            if (p.left.empty()) p.left.high = q.left.high;
            else ref[static_cast<size_t>(p.left.low)] = q.left.high;
            p.left.low = q.left.low;
        }
        if (!(p.left.empty() && p.right.empty())) S.push_back(p);
        return true;
    }

    void remove_back_edges(int pe) {
        VertexId u = o_tail[static_cast<size_t>(pe)];
        // Drop entire conflict pairs returning exactly to u.
        while (!S.empty() && lowest(S.back()) == height[static_cast<size_t>(u)]) {
            ConflictPair p = S.back();
            S.pop_back();
            if (p.left.low >= 0) side[static_cast<size_t>(p.left.low)] = -1;
        }
        if (!S.empty()) {  // one more pair to trim
            ConflictPair p = S.back();
            S.pop_back();
            while (p.left.high >= 0 && o_head[static_cast<size_t>(p.left.high)] == u)
                p.left.high = ref[static_cast<size_t>(p.left.high)];
            if (p.left.high < 0 && p.left.low >= 0) {
                ref[static_cast<size_t>(p.left.low)] = p.right.low;
                side[static_cast<size_t>(p.left.low)] = -1;
                p.left.low = -1;
            }
            while (p.right.high >= 0 && o_head[static_cast<size_t>(p.right.high)] == u)
                p.right.high = ref[static_cast<size_t>(p.right.high)];
            if (p.right.high < 0 && p.right.low >= 0) {
                ref[static_cast<size_t>(p.right.low)] = p.left.low;
                side[static_cast<size_t>(p.right.low)] = -1;
                p.right.low = -1;
            }
            S.push_back(p);
        }
        // The side of pe is the side of its highest return edge.
        if (lowpt[static_cast<size_t>(pe)] < height[static_cast<size_t>(u)]) {
            MCF_CHECK(!S.empty(), "conflict stack empty although return edges remain");
            int hl = S.back().left.high, hr = S.back().right.high;
            if (hl >= 0 && (hr < 0 || lowpt[static_cast<size_t>(hl)] > lowpt[static_cast<size_t>(hr)]))
                ref[static_cast<size_t>(pe)] = hl;
            else
                ref[static_cast<size_t>(pe)] = hr;
        }
    }

    bool dfs_testing(VertexId root) {
        std::vector<VertexId> stack{root};
        std::vector<size_t> ind(static_cast<size_t>(n), 0);
        std::vector<char> init_done(static_cast<size_t>(m), 0);
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            int pe = parent_edge[static_cast<size_t>(v)];
            bool descended = false;
            while (ind[static_cast<size_t>(v)] < odg[static_cast<size_t>(v)].size()) {
                size_t i = ind[static_cast<size_t>(v)];
                int e = odg[static_cast<size_t>(v)][i];
                VertexId w = o_head[static_cast<size_t>(e)];
                if (!init_done[static_cast<size_t>(e)]) {
                    stack_bottom[static_cast<size_t>(e)] = static_cast<int>(S.size());
                    if (e == parent_edge[static_cast<size_t>(w)]) {  // tree edge
                        init_done[static_cast<size_t>(e)] = 1;
                        stack.push_back(v);
                        stack.push_back(w);
                        descended = true;
                        break;
                    }
                    lowpt_edge[static_cast<size_t>(e)] = e;  // back edge
                    ConflictPair p;
                    p.right = {e, e};
                    S.push_back(p);
                }
                if (lowpt[static_cast<size_t>(e)] < height[static_cast<size_t>(v)]) {
                    if (i == 0) {
                        lowpt_edge[static_cast<size_t>(pe)] = lowpt_edge[static_cast<size_t>(e)];
                    } else if (!add_constraints(e, pe)) {
                        return false;
                    }
                }
                ++ind[static_cast<size_t>(v)];
            }
            if (descended) continue;
            if (pe >= 0) remove_back_edges(pe);
        }
        return true;
    }

    int resolve_sign(int e) {
        // side(e) *= side(ref chain); iterative unwind with memoization via
        // ref = -1 marking.
        std::vector<int> chain;
        while (e >= 0 && ref[static_cast<size_t>(e)] >= 0) {
            chain.push_back(e);
            e = ref[static_cast<size_t>(e)];
        }
        int s = e >= 0 ? side[static_cast<size_t>(e)] : 1;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            side[static_cast<size_t>(*it)] *= s;
            ref[static_cast<size_t>(*it)] = -1;
            s = side[static_cast<size_t>(*it)];
        }
        return s;
    }
};

}  // namespace

std::optional<RotationSystem> planar_embed(
    int n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
    for (auto [u, v] : edges)
        MCF_CHECK(u != v && u >= 0 && u < n && v >= 0 && v < n, "planar_embed: bad edge");
    if (n >= 3 && static_cast<std::int64_t>(edges.size()) > 3 * static_cast<std::int64_t>(n) - 6)
        return std::nullopt;  // edge count alone exceeds any planar graph

    LRState st(n, edges);
    for (VertexId v = 0; v < n; ++v)
        if (st.height[static_cast<size_t>(v)] < 0) {
            st.roots.push_back(v);
            st.dfs_orientation(v);
        }
    for (VertexId v = 0; v < n; ++v) {
        auto& o = st.odg[static_cast<size_t>(v)];
        o = st.dg[static_cast<size_t>(v)];
        std::sort(o.begin(), o.end(), [&](int a, int b) {
            if (st.nesting[static_cast<size_t>(a)] != st.nesting[static_cast<size_t>(b)])
                return st.nesting[static_cast<size_t>(a)] < st.nesting[static_cast<size_t>(b)];
            return a < b;
        });
    }
    for (VertexId r : st.roots) {
        if (!st.dfs_testing(r)) return std::nullopt;
        MCF_CHECK(st.S.empty(), "conflict stack not empty after a component");
    }

    // Embedding phase: re-sort by signed nesting depth, lay out the oriented
    // darts, then place the reverse darts with a DFS.
    for (int e = 0; e < st.m; ++e)
        st.nesting[static_cast<size_t>(e)] *= st.resolve_sign(e);
    RotationSystem rot(n);
    for (auto [u, v] : edges) rot.new_edge(u, v);
    auto dart_of = [&](int e, VertexId from) {
        return 2 * e + (edges[static_cast<size_t>(e)].first == from ? 0 : 1);
    };
    for (VertexId v = 0; v < n; ++v) {
        auto& o = st.odg[static_cast<size_t>(v)];
        std::sort(o.begin(), o.end(), [&](int a, int b) {
            if (st.nesting[static_cast<size_t>(a)] != st.nesting[static_cast<size_t>(b)])
                return st.nesting[static_cast<size_t>(a)] < st.nesting[static_cast<size_t>(b)];
            return a < b;
        });
        int prev = -1;
        for (int e : o) {
            int d = dart_of(e, v);
            if (prev < 0) {
                if (rot.entry[static_cast<size_t>(v)] < 0) rot.attach_only(d);
                else rot.attach_before(rot.entry[static_cast<size_t>(v)], d),
                    rot.entry[static_cast<size_t>(v)] = d;
            } else {
                rot.attach_after(prev, d);
            }
            prev = d;
        }
    }
    // left_ref / right_ref hold the reference DART at each vertex next to
    // which back-edge darts are inserted.
    std::vector<int> left_ref(static_cast<size_t>(n), -1), right_ref(static_cast<size_t>(n), -1);
    auto oriented_dart = [&](int e) { return dart_of(e, st.o_tail[static_cast<size_t>(e)]); };
    std::vector<size_t> ind(static_cast<size_t>(n), 0);
    for (VertexId r : st.roots) {
        std::vector<VertexId> stack{r};
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            while (ind[static_cast<size_t>(v)] < st.odg[static_cast<size_t>(v)].size()) {
                int e = st.odg[static_cast<size_t>(v)][ind[static_cast<size_t>(v)]];
                ++ind[static_cast<size_t>(v)];
                VertexId w = st.o_head[static_cast<size_t>(e)];
                int fwd_dart = oriented_dart(e);                    // v -> w
                int back_dart = RotationSystem::twin(fwd_dart);     // w -> v
                if (e == st.parent_edge[static_cast<size_t>(w)]) {  // tree edge
                    // insert w->v as the first dart at w
                    int first = rot.entry[static_cast<size_t>(w)];
                    if (first < 0) rot.attach_only(back_dart);
                    else {
                        rot.attach_before(first, back_dart);
                        rot.entry[static_cast<size_t>(w)] = back_dart;
                    }
                    left_ref[static_cast<size_t>(v)] = fwd_dart;
                    right_ref[static_cast<size_t>(v)] = fwd_dart;
                    stack.push_back(v);
                    stack.push_back(w);
                    break;
                }
                // back edge: place w->v next to the reference dart at w
                if (st.side[static_cast<size_t>(e)] == 1) {
                    MCF_CHECK(right_ref[static_cast<size_t>(w)] >= 0, "missing right reference");
                    rot.attach_after(right_ref[static_cast<size_t>(w)], back_dart);
                } else {
                    int refd = left_ref[static_cast<size_t>(w)];
                    MCF_CHECK(refd >= 0, "missing left reference");
                    rot.attach_before(refd, back_dart);
                    if (rot.entry[static_cast<size_t>(w)] == refd)
                        rot.entry[static_cast<size_t>(w)] = back_dart;
                    left_ref[static_cast<size_t>(w)] = back_dart;
                }
            }
        }
    }
    rot.validate();
    return rot;
}

RotationSystem rotation_from_neighbor_lists(
    int n, const std::vector<std::pair<VertexId, VertexId>>& edges,
    const std::vector<std::vector<VertexId>>& rotation) {
    MCF_CHECK(static_cast<int>(rotation.size()) == n, "rotation table size mismatch");
    RotationSystem rot(n);
    std::unordered_map<std::uint64_t, int> eid;
    eid.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        MCF_CHECK(u != v, "rotation input contains a loop");
        bool fresh = eid.emplace(pair_key(u, v), rot.new_edge(u, v)).second;
        MCF_CHECK(fresh, "rotation input contains a duplicate edge");
    }
    std::vector<int> deg(static_cast<size_t>(n), 0);
    for (auto [u, v] : edges) {
        ++deg[static_cast<size_t>(u)];
        ++deg[static_cast<size_t>(v)];
    }
    std::vector<char> used(edges.size() * 2, 0);
    for (VertexId v = 0; v < n; ++v) {
        const auto& nbrs = rotation[static_cast<size_t>(v)];
        MCF_CHECK(static_cast<int>(nbrs.size()) == deg[static_cast<size_t>(v)],
                  "rotation list length differs from vertex degree");
        int prev = -1;
        for (VertexId w : nbrs) {
            auto it = eid.find(pair_key(v, w));
            MCF_CHECK(it != eid.end(), "rotation lists a non-adjacent neighbor");
            int e = it->second;
            int d = 2 * e + (rot.edges[static_cast<size_t>(e)].first == v ? 0 : 1);
            MCF_CHECK(!used[static_cast<size_t>(d)], "rotation repeats a neighbor");
            used[static_cast<size_t>(d)] = 1;
            if (prev < 0) rot.attach_only(d);
            else rot.attach_after(prev, d);
            prev = d;
        }
    }
    rot.validate();
    return rot;
}

std::vector<std::vector<VertexId>> neighbor_lists_from_rotation(const RotationSystem& rot) {
    std::vector<std::vector<VertexId>> out(static_cast<size_t>(rot.n));
    for (VertexId v = 0; v < rot.n; ++v) {
        int d0 = rot.entry[static_cast<size_t>(v)];
        if (d0 < 0) continue;
        int d = d0;
        do {
            out[static_cast<size_t>(v)].push_back(rot.head(d));
            d = rot.nxt[static_cast<size_t>(d)];
        } while (d != d0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Connect + biconnect + triangulate.
// ---------------------------------------------------------------------------

namespace {

// Biconnected component label per edge (standard DFS edge-stack algorithm).
std::vector<int> biconnected_components(int n,
                                        const std::vector<std::pair<VertexId, VertexId>>& edges) {
    std::vector<std::vector<std::pair<VertexId, int>>> adj(static_cast<size_t>(n));
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        adj[static_cast<size_t>(edges[static_cast<size_t>(e)].first)].emplace_back(
            edges[static_cast<size_t>(e)].second, e);
        adj[static_cast<size_t>(edges[static_cast<size_t>(e)].second)].emplace_back(
            edges[static_cast<size_t>(e)].first, e);
    }
    std::vector<int> comp(edges.size(), -1), disc(static_cast<size_t>(n), -1),
        low(static_cast<size_t>(n), 0);
    std::vector<int> estack;
    int timer = 0, ncomp = 0;
    struct Frame {
        VertexId v;
        int parent_edge;
        size_t i;
    };
    for (VertexId r = 0; r < n; ++r) {
        if (disc[static_cast<size_t>(r)] >= 0) continue;
        std::vector<Frame> stack{{r, -1, 0}};
        disc[static_cast<size_t>(r)] = low[static_cast<size_t>(r)] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.i < adj[static_cast<size_t>(f.v)].size()) {
                auto [w, e] = adj[static_cast<size_t>(f.v)][f.i++];
                if (e == f.parent_edge) continue;
                if (disc[static_cast<size_t>(w)] < 0) {
                    estack.push_back(e);
                    disc[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = timer++;
                    stack.push_back({w, e, 0});
                } else if (disc[static_cast<size_t>(w)] < disc[static_cast<size_t>(f.v)]) {
                    estack.push_back(e);
                    low[static_cast<size_t>(f.v)] =
                        std::min(low[static_cast<size_t>(f.v)], disc[static_cast<size_t>(w)]);
                }
            } else {
                VertexId w = f.v;
                int pe = f.parent_edge;
                stack.pop_back();
                if (stack.empty()) continue;
                VertexId v = stack.back().v;
                low[static_cast<size_t>(v)] =
                    std::min(low[static_cast<size_t>(v)], low[static_cast<size_t>(w)]);
                if (low[static_cast<size_t>(w)] >= disc[static_cast<size_t>(v)]) {
                    // v is an articulation point (or root): pop the component.
                    while (true) {
                        MCF_CHECK(!estack.empty(), "bicomp edge stack underflow");
                        int e = estack.back();
                        estack.pop_back();
                        comp[static_cast<size_t>(e)] = ncomp;
                        if (e == pe) break;
                    }
                    ++ncomp;
                }
            }
        }
        MCF_CHECK(estack.empty(), "bicomp edge stack not drained");
    }
    return comp;
}

struct Dsu {
    std::vector<int> up;
    explicit Dsu(int n) : up(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) up[static_cast<size_t>(i)] = i;
    }
    int find(int x) {
        while (up[static_cast<size_t>(x)] != x) {
            up[static_cast<size_t>(x)] = up[static_cast<size_t>(up[static_cast<size_t>(x)])];
            x = up[static_cast<size_t>(x)];
        }
        return x;
    }
    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        up[static_cast<size_t>(a)] = b;
        return true;
    }
};

}  // namespace

int triangulate(RotationSystem& rot) {
    const int n = rot.n;
    MCF_CHECK(n >= 3, "triangulate requires n >= 3");
    const int input_edges = rot.num_edges();

    // Connect: merge every component into the first via a dummy edge placed
    // at arbitrary corners of the two merged faces.
    {
        std::vector<int> comp(static_cast<size_t>(n), -1);
        std::vector<VertexId> reps;
        std::vector<VertexId> stack;
        for (VertexId r = 0; r < n; ++r) {
            if (comp[static_cast<size_t>(r)] >= 0) continue;
            comp[static_cast<size_t>(r)] = static_cast<int>(reps.size());
            reps.push_back(r);
            stack.push_back(r);
            while (!stack.empty()) {
                VertexId v = stack.back();
                stack.pop_back();
                int d0 = rot.entry[static_cast<size_t>(v)];
                if (d0 < 0) continue;
                int d = d0;
                do {
                    VertexId w = rot.head(d);
                    if (comp[static_cast<size_t>(w)] < 0) {
                        comp[static_cast<size_t>(w)] = comp[static_cast<size_t>(r)];
                        stack.push_back(w);
                    }
                    d = rot.nxt[static_cast<size_t>(d)];
                } while (d != d0);
            }
        }
        for (size_t k = 1; k < reps.size(); ++k) {
            int e = rot.new_edge(reps[0], reps[static_cast<size_t>(k)]);
            rot.attach(2 * e);
            rot.attach(2 * e + 1);
        }
    }

    // Biconnect: for consecutive rotation darts d1, d2 at v whose edges lie
    // in different biconnected components, add the edge {head(d1), head(d2)}
    // across the corner; this keeps the embedding planar and merges the two
    // components at v.
    {
        std::vector<int> comp = biconnected_components(n, rot.edges);
        int ncomp = 0;
        for (int c : comp) ncomp = std::max(ncomp, c + 1);
        Dsu dsu(ncomp + 1);
        for (VertexId v = 0; v < n; ++v) {
            int d0 = rot.entry[static_cast<size_t>(v)];
            if (d0 < 0 || rot.nxt[static_cast<size_t>(d0)] == d0) continue;
            // Walk the rotation once; consecutive pairs chain all components.
            std::vector<int> darts;
            int d = d0;
            do {
                darts.push_back(d);
                d = rot.nxt[static_cast<size_t>(d)];
            } while (d != d0);
            for (size_t i = 0; i + 1 < darts.size(); ++i) {
                int d1 = darts[i], d2 = darts[i + 1];
                int c1 = d1 >> 1 < static_cast<int>(comp.size()) ? comp[static_cast<size_t>(d1 >> 1)] : -1;
                int c2 = d2 >> 1 < static_cast<int>(comp.size()) ? comp[static_cast<size_t>(d2 >> 1)] : -1;
                MCF_CHECK(c1 >= 0 && c2 >= 0, "edge missing a bicomp label");
                if (dsu.find(c1) == dsu.find(c2)) continue;
                dsu.merge(c1, c2);
                VertexId a = rot.head(d1), c = rot.head(d2);
                int e = rot.new_edge(a, c);
                comp.push_back(c1);
                // Chord across the corner (d1, d2): a->c goes right before
                // twin(d1) at a, c->a right after twin(d2) at c.
                rot.attach_before(RotationSystem::twin(d1), 2 * e);
                rot.attach_after(RotationSystem::twin(d2), 2 * e + 1);
            }
        }
    }

    // Triangulate every face of the now biconnected plane graph.
    {
        std::unordered_set<std::uint64_t> present;
        present.reserve(rot.edges.size() * 3);
        for (auto [u, v] : rot.edges) present.insert(pair_key(u, v));
        auto add_chord = [&](int din_a, int din_c) {
            // din_a enters a, din_c enters c on the same face; returns the
            // dart a->c of the new chord.
            VertexId a = rot.head(din_a), c = rot.head(din_c);
            int e = rot.new_edge(a, c);
            present.insert(pair_key(a, c));
            rot.attach_after(RotationSystem::twin(din_a), 2 * e);
            rot.attach_after(RotationSystem::twin(din_c), 2 * e + 1);
            return 2 * e;
        };
        auto faces = rot.faces();
        for (auto& face : faces) {
            // face is a dart cycle d0 d1 ...; vertices are the dart tails.
            while (face.size() > 3) {
                size_t k = face.size();
                VertexId v0 = rot.tail(face[0]), v1 = rot.tail(face[1]),
                         v2 = rot.tail(face[2]), v3 = rot.tail(face[3 % k]);
                MCF_CHECK(v0 != v2 && v1 != v3, "face repeats a vertex; graph not biconnected");
                if (!present.count(pair_key(v0, v2))) {
                    int alpha = add_chord(face[k - 1], face[1]);
                    // triangle (v0, v1, v2) split off; face becomes alpha, d2, ...
                    face[1] = alpha;
                    face.erase(face.begin());
                } else {
                    // v0-v2 chord exists outside, so v1-v3 cannot.
                    MCF_CHECK(!present.count(pair_key(v1, v3)),
                              "both candidate chords already exist");
                    int alpha = add_chord(face[0], face[2]);
                    // triangle (v1, v2, v3) split off; face becomes d0, alpha, d4rest
                    face[1] = alpha;
                    face.erase(face.begin() + 2, face.begin() + 3);
                }
            }
        }
    }

    rot.validate();
    for (const auto& face : rot.faces())
        MCF_CHECK(face.size() == 3, "triangulation left a non-triangle face");
    MCF_CHECK(rot.num_edges() == 3 * n - 6, "triangulation edge count differs from 3n-6");
    return input_edges;
}

SupportGraph build_support(const MultiGraph& g) {
    SupportGraph s;
    s.n = g.num_vertices();
    s.support_of.assign(static_cast<size_t>(g.num_edge_ids()), -1);
    std::unordered_map<std::uint64_t, int> eid;
    for (EdgeId o = 0; o < g.num_original(); ++o) {
        EdgeId e = 2 * o;
        VertexId u = g.tail(e), v = g.head(e);
        if (u == v) continue;  // loops never appear on shortest paths
        auto [it, fresh] = eid.emplace(pair_key(u, v), static_cast<int>(s.edges.size()));
        if (fresh) s.edges.emplace_back(std::min(u, v), std::max(u, v));
        s.support_of[static_cast<size_t>(e)] = it->second;
        s.support_of[static_cast<size_t>(e ^ 1)] = it->second;
    }
    return s;
}

}  // namespace mcf::planar
