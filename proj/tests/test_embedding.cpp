#include <doctest.h>

#include "mcf/generate.hpp"
#include "mcf/planar/embedding.hpp"

using namespace mcf;
using namespace mcf::planar;

namespace {

std::vector<std::pair<VertexId, VertexId>> complete_graph(int n) {
    std::vector<std::pair<VertexId, VertexId>> es;
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return es;
}

std::vector<std::pair<VertexId, VertexId>> grid_graph(int rows, int cols) {
    std::vector<std::pair<VertexId, VertexId>> es;
    auto id = [cols](int i, int j) { return i * cols + j; };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (j + 1 < cols) es.emplace_back(id(i, j), id(i, j + 1));
            if (i + 1 < rows) es.emplace_back(id(i, j), id(i + 1, j));
        }
    return es;
}

int face_count(const RotationSystem& rot) { return static_cast<int>(rot.faces().size()); }

}  // namespace

TEST_CASE("K4 embeds, K5 and K3,3 are rejected") {
    CHECK(planar_embed(4, complete_graph(4)).has_value());
    CHECK(!planar_embed(5, complete_graph(5)).has_value());
    std::vector<std::pair<VertexId, VertexId>> k33;
    for (VertexId a = 0; a < 3; ++a)
        for (VertexId b = 3; b < 6; ++b) k33.emplace_back(a, b);
    CHECK(!planar_embed(6, k33).has_value());
}

TEST_CASE("grids embed with the right face count") {
    for (auto [r, c] : {std::pair{2, 2}, {3, 4}, {6, 6}, {1, 8}}) {
        auto es = grid_graph(r, c);
        auto rot = planar_embed(r * c, es);
        REQUIRE(rot.has_value());
        rot->validate();
        // connected: V - E + F = 2
        CHECK(r * c - static_cast<int>(es.size()) + face_count(*rot) == 2);
    }
}

TEST_CASE("disconnected graphs and trees embed") {
    std::vector<std::pair<VertexId, VertexId>> es{{0, 1}, {1, 2}, {3, 4}};
    auto rot = planar_embed(6, es);  // includes an isolated vertex
    REQUIRE(rot.has_value());
    rot->validate();
    // two edged components trace their own outer faces; one isolated vertex
    CHECK(6 - 3 + face_count(*rot) == 2 * 2 + 1);
}

TEST_CASE("generated triangulations re-embed and triangulate cleanly") {
    for (int n : {5, 12, 40}) {
        InstanceSpec spec;
        spec.kind = GenKind::triangulation;
        spec.n = n;
        spec.seed = static_cast<std::uint64_t>(n);
        Instance inst = generate(spec);
        SupportGraph support = build_support(inst.graph);
        CHECK(static_cast<int>(support.edges.size()) == 3 * n - 6);
        // provided rotation validates
        RotationSystem provided =
            rotation_from_neighbor_lists(n, support.edges, inst.rotation);
        CHECK(n - static_cast<int>(support.edges.size()) + face_count(provided) == 2);
        // computed embedding also validates
        auto computed = planar_embed(n, support.edges);
        REQUIRE(computed.has_value());
        CHECK(n - static_cast<int>(support.edges.size()) + face_count(*computed) == 2);
        // a triangulation stays put under triangulate()
        RotationSystem copy = provided;
        int before = triangulate(copy);
        CHECK(before == 3 * n - 6);
        CHECK(copy.num_edges() == 3 * n - 6);
    }
}

TEST_CASE("triangulate augments sparse and disconnected graphs") {
    // path + separate edge + isolated vertex
    std::vector<std::pair<VertexId, VertexId>> es{{0, 1}, {1, 2}, {3, 4}};
    auto rot = planar_embed(6, es);
    REQUIRE(rot.has_value());
    int real = triangulate(*rot);
    CHECK(real == 3);
    CHECK(rot->num_edges() == 3 * 6 - 6);
    for (const auto& face : rot->faces()) CHECK(face.size() == 3);
}

TEST_CASE("random planar subgraphs embed both ways") {
    Rng rng(4242);
    for (int it = 0; it < 30; ++it) {
        InstanceSpec spec;
        spec.kind = GenKind::triangulation;
        spec.n = 8 + static_cast<int>(rng.below(30));
        spec.seed = rng.next();
        Instance inst = generate(spec);
        SupportGraph support = build_support(inst.graph);
        // drop a random subset of edges: still planar
        std::vector<std::pair<VertexId, VertexId>> kept;
        for (auto e : support.edges)
            if (rng.below(4) != 0) kept.push_back(e);
        auto rot = planar_embed(spec.n, kept);
        REQUIRE(rot.has_value());
        rot->validate();
        RotationSystem copy = *rot;
        triangulate(copy);
        CHECK(copy.num_edges() == 3 * spec.n - 6);
    }
}

TEST_CASE("neighbor lists round-trip through the rotation system") {
    InstanceSpec spec;
    spec.kind = GenKind::grid;
    spec.rows = 3;
    spec.cols = 3;
    spec.seed = 5;
    Instance inst = generate(spec);
    SupportGraph support = build_support(inst.graph);
    RotationSystem rot = rotation_from_neighbor_lists(9, support.edges, inst.rotation);
    auto lists = neighbor_lists_from_rotation(rot);
    // same cyclic order up to the starting point
    for (VertexId v = 0; v < 9; ++v) {
        auto& a = inst.rotation[static_cast<size_t>(v)];
        auto& b = lists[static_cast<size_t>(v)];
        REQUIRE(a.size() == b.size());
        if (a.empty()) continue;
        auto it = std::find(b.begin(), b.end(), a[0]);
        REQUIRE(it != b.end());
        for (size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == b[(static_cast<size_t>(it - b.begin()) + i) % b.size()]);
    }
}
