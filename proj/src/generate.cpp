#include "mcf/generate.hpp"

#include <algorithm>
#include <utility>

namespace mcf {

namespace {

void add_parallel(MultiGraph& g, Rng& rng, VertexId u, VertexId v, const InstanceSpec& s) {
    for (int k = 0; k < s.multiplicity; ++k) {
        std::int64_t c = rng.range(s.cost_min, s.cost_max);
        if (rng.coin())
            g.add_edge(u, v, c);
        else
            g.add_edge(v, u, c);
    }
}

Instance make_grid(const InstanceSpec& s) {
    MCF_CHECK(s.rows >= 1 && s.cols >= 1, "grid: rows/cols must be positive");
    int rows = s.rows, cols = s.cols;
    int n = rows * cols;
    Rng rng(s.seed);
    Instance inst{MultiGraph(n), {}, "grid"};
    auto id = [cols](int i, int j) { return i * cols + j; };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (j + 1 < cols) add_parallel(inst.graph, rng, id(i, j), id(i, j + 1), s);
            if (i + 1 < rows) add_parallel(inst.graph, rng, id(i, j), id(i + 1, j), s);
        }
    // Clockwise rotation: north, east, south, west.
    inst.rotation.assign(static_cast<size_t>(n), {});
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            auto& rot = inst.rotation[static_cast<size_t>(id(i, j))];
            if (i > 0) rot.push_back(id(i - 1, j));
            if (j + 1 < cols) rot.push_back(id(i, j + 1));
            if (i + 1 < rows) rot.push_back(id(i + 1, j));
            if (j > 0) rot.push_back(id(i, j - 1));
        }
    return inst;
}

// Combinatorial triangulation by repeated insertion of a new vertex into a
// random face of the current triangulation (no geometry involved).
Instance make_triangulation(const InstanceSpec& s) {
    MCF_CHECK(s.n >= 3, "triangulation: n must be >= 3");
    const int n = s.n;
    Rng rng(s.seed);
    // Darts: 2*edge + dir. Rotation kept as circular doubly linked lists.
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> nxt, prv;
    std::vector<int> entry(static_cast<size_t>(n), -1);
    auto tail_of = [&](int d) { return (d & 1) ? edges[d >> 1].second : edges[d >> 1].first; };
    auto head_of = [&](int d) { return (d & 1) ? edges[d >> 1].first : edges[d >> 1].second; };
    auto new_edge = [&](VertexId u, VertexId v) {
        edges.emplace_back(u, v);
        nxt.resize(edges.size() * 2, -1);
        prv.resize(edges.size() * 2, -1);
        return static_cast<int>(2 * (edges.size() - 1));
    };
    auto attach_single = [&](int d) {  // first dart at this vertex
        nxt[d] = prv[d] = d;
        entry[static_cast<size_t>(tail_of(d))] = d;
    };
    auto insert_after = [&](int pos, int d) {
        nxt[d] = nxt[pos];
        prv[d] = pos;
        prv[nxt[pos]] = d;
        nxt[pos] = d;
    };
    auto insert_before = [&](int pos, int d) { insert_after(prv[pos], d); };

    int e01 = new_edge(0, 1), e12 = new_edge(1, 2), e20 = new_edge(2, 0);
    attach_single(e01);
    insert_after(e01, e20 ^ 1);            // rot[0] = [0->1, 0->2]
    attach_single(e12);
    insert_after(e12, e01 ^ 1);            // rot[1] = [1->2, 1->0]
    attach_single(e20);
    insert_after(e20, e12 ^ 1);            // rot[2] = [2->0, 2->1]

    struct Face {
        int dab, dbc, dca;  // darts a->b, b->c, c->a
    };
    std::vector<Face> faces{{e01, e12, e20}, {e20 ^ 1, e12 ^ 1, e01 ^ 1}};
    for (VertexId v = 3; v < n; ++v) {
        size_t fi = static_cast<size_t>(rng.below(faces.size()));
        Face f = faces[fi];
        int dab = f.dab, dbc = f.dbc, dca = f.dca;
        VertexId a = tail_of(dab), b = tail_of(dbc), c = tail_of(dca);
        int eav = new_edge(a, v), ebv = new_edge(b, v), ecv = new_edge(c, v);
        insert_before(dab, eav);            // a->v just before a->b
        insert_after(dab ^ 1, ebv);         // b->v just after b->a
        insert_after(dbc ^ 1, ecv);         // c->v just after c->b
        attach_single(ebv ^ 1);             // rot[v] = [v->b, v->a, v->c]
        insert_after(ebv ^ 1, eav ^ 1);
        insert_after(eav ^ 1, ecv ^ 1);
        faces[fi] = {dab, ebv, eav ^ 1};            // (a, b, v)
        faces.push_back({dbc, ecv, ebv ^ 1});       // (b, c, v)
        faces.push_back({dca, eav, ecv ^ 1});       // (c, a, v)
    }

    Instance inst{MultiGraph(n), {}, "triangulation"};
    inst.rotation.assign(static_cast<size_t>(n), {});
    for (VertexId v = 0; v < n; ++v) {
        int d0 = entry[static_cast<size_t>(v)];
        MCF_CHECK(d0 >= 0, "triangulation left an isolated vertex");
        int d = d0;
        do {
            inst.rotation[static_cast<size_t>(v)].push_back(head_of(d));
            d = nxt[d];
        } while (d != d0);
    }
    for (auto [u, v] : edges) add_parallel(inst.graph, rng, u, v, s);
    return inst;
}

Instance make_random(const InstanceSpec& s) {
    MCF_CHECK(s.n >= 1, "random: n must be positive");
    Rng rng(s.seed);
    Instance inst{MultiGraph(s.n), {}, "random"};
    for (std::int64_t i = 0; i < s.m; ++i) {
        VertexId u = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(s.n)));
        VertexId v = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(s.n)));
        std::int64_t c = rng.range(s.cost_min, s.cost_max);
        inst.graph.add_edge(u, v, c);
    }
    return inst;
}

}  // namespace

Instance generate(const InstanceSpec& spec) {
    MCF_CHECK(spec.multiplicity >= 1, "multiplicity must be >= 1");
    MCF_CHECK(spec.cost_min <= spec.cost_max, "empty cost range");
    switch (spec.kind) {
        case GenKind::grid: return make_grid(spec);
        case GenKind::triangulation: return make_triangulation(spec);
        case GenKind::random_multigraph: return make_random(spec);
    }
    fail_invariant("unknown generator kind");
}

}  // namespace mcf
