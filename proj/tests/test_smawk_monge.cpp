#include <doctest.h>

#include <vector>

#include "mcf/generate.hpp"
#include "mcf/planar/smawk.hpp"

using namespace mcf;
using namespace mcf::planar;

namespace {

using Matrix = std::vector<std::vector<Price>>;

// Random Monge matrix: row/column offsets plus a quadratic Monge kernel and
// random upper-right rectangle increments (each preserves the inequality).
Matrix random_monge(Rng& rng, int rows, int cols) {
    Matrix m(static_cast<size_t>(rows), std::vector<Price>(static_cast<size_t>(cols), 0));
    std::vector<Price> row_off(static_cast<size_t>(rows)), col_off(static_cast<size_t>(cols));
    for (auto& x : row_off) x = rng.range(0, 50);
    for (auto& x : col_off) x = rng.range(0, 50);
    Price scale = rng.range(0, 3);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                row_off[static_cast<size_t>(i)] + col_off[static_cast<size_t>(j)] +
                scale * (i - j) * (i - j);
    int rects = static_cast<int>(rng.below(8));
    for (int k = 0; k < rects; ++k) {
        int i0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(rows)));
        int j0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(cols)));
        Price d = rng.range(1, 9);
        for (int i = 0; i <= i0; ++i)
            for (int j = j0; j < cols; ++j)
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] += d;
    }
    return m;
}

bool is_monge(const Matrix& m) {
    for (size_t a = 0; a + 1 < m.size(); ++a)
        for (size_t x = 0; x + 1 < m[a].size(); ++x)
            if (m[a][x] + m[a + 1][x + 1] > m[a][x + 1] + m[a + 1][x]) return false;
    return true;
}

}  // namespace

TEST_CASE("smawk on tiny explicit matrices") {
    Matrix m{{1, 2}, {3, 3}};
    auto entry = [&](int r, int c) { return m[static_cast<size_t>(r)][static_cast<size_t>(c)]; };
    auto left = smawk_leftmost_row_minima(2, 2, entry);
    CHECK(left == std::vector<int>{0, 0});
    auto right = smawk_rightmost_row_minima(2, 2, entry);
    CHECK(right == std::vector<int>{0, 1});
}

TEST_CASE("constant matrices give full-width intervals") {
    auto entry = [](int, int) { return Price{7}; };
    auto left = smawk_leftmost_row_minima(5, 9, entry);
    auto right = smawk_rightmost_row_minima(5, 9, entry);
    for (int r = 0; r < 5; ++r) {
        CHECK(left[static_cast<size_t>(r)] == 0);
        CHECK(right[static_cast<size_t>(r)] == 8);
    }
}

TEST_CASE("smawk equals brute force on 200 random Monge matrices") {
    Rng rng(2024);
    for (int it = 0; it < 200; ++it) {
        int rows = 1 + static_cast<int>(rng.below(64));
        int cols = 1 + static_cast<int>(rng.below(64));
        Matrix m = random_monge(rng, rows, cols);
        REQUIRE(is_monge(m));
        auto entry = [&](int r, int c) {
            return m[static_cast<size_t>(r)][static_cast<size_t>(c)];
        };
        auto left = smawk_leftmost_row_minima(rows, cols, entry);
        auto right = smawk_rightmost_row_minima(rows, cols, entry);
        for (int r = 0; r < rows; ++r) {
            int bl = 0, br = 0;
            for (int c = 1; c < cols; ++c) {
                if (entry(r, c) < entry(r, bl)) bl = c;
                if (entry(r, c) <= entry(r, br)) br = c;
            }
            CHECK(left[static_cast<size_t>(r)] == bl);
            CHECK(right[static_cast<size_t>(r)] == br);
        }
    }
}
