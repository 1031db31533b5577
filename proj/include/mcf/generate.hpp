#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcf/graph.hpp"

namespace mcf {

// splitmix64: tiny deterministic generator so that instances replay
// byte-identically across platforms and standard library versions.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool coin() { return next() & 1; }
};

struct Instance {
    MultiGraph graph;
    // Cyclic neighbor order per vertex of the simple support graph; empty
    // when the generator does not provide an embedding.
    std::vector<std::vector<VertexId>> rotation;
    std::string name;
};

enum class GenKind { grid, triangulation, random_multigraph };

struct InstanceSpec {
    GenKind kind = GenKind::random_multigraph;
    int rows = 0, cols = 0;      // grid
    int n = 0;                   // triangulation / random
    std::int64_t m = 0;          // random
    std::int64_t cost_min = -10, cost_max = 10;
    int multiplicity = 1;        // parallel copies per support adjacency
    std::uint64_t seed = 0;
};

// Deterministic instance construction; planar kinds carry a valid rotation
// system. Every support adjacency receives `multiplicity` parallel edges
// with independent random direction and cost.
Instance generate(const InstanceSpec& spec);

}  // namespace mcf
