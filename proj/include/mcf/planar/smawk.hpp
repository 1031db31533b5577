#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mcf/ints.hpp"

namespace mcf::planar {

// Row minima of an implicit totally monotone matrix in O(rows + cols)
// evaluations. entry(r, c) must be O(1); kInf entries are allowed as long as
// total monotonicity still holds. Returns, per row, the column of the
// leftmost minimum.
std::vector<int> smawk_leftmost_row_minima(int rows, int cols,
                                           const std::function<Price(int, int)>& entry);

// Rightmost minima, via the reversed-column view (also totally monotone for
// Monge inputs).
std::vector<int> smawk_rightmost_row_minima(int rows, int cols,
                                            const std::function<Price(int, int)>& entry);

}  // namespace mcf::planar
