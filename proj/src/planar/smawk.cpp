#include "mcf/planar/smawk.hpp"

namespace mcf::planar {

namespace {

using Entry = std::function<Price(int, int)>;

// Classic REDUCE + halve recursion; out is indexed by row id. Ties resolve
// to the leftmost column.
void smawk_rec(const std::vector<int>& rows, const std::vector<int>& cols, const Entry& f,
               std::vector<int>& out) {
    if (rows.empty()) return;
    std::vector<int> kept;
    kept.reserve(std::min(rows.size(), cols.size()));
    for (int c : cols) {
        while (!kept.empty()) {
            int r = rows[kept.size() - 1];
            if (f(r, kept.back()) > f(r, c)) kept.pop_back();
            else break;
        }
        if (kept.size() < rows.size()) kept.push_back(c);
    }
    std::vector<int> odd;
    for (size_t i = 1; i < rows.size(); i += 2) odd.push_back(rows[i]);
    smawk_rec(odd, kept, f, out);
    size_t ci = 0;
    for (size_t i = 0; i < rows.size(); i += 2) {
        int r = rows[i];
        int stop = (i + 1 < rows.size()) ? out[static_cast<size_t>(rows[i + 1])] : kept.back();
        int best = kept[ci];
        Price best_val = f(r, kept[ci]);
        size_t j = ci;
        while (kept[j] != stop) {
            ++j;
            Price v = f(r, kept[j]);
            if (v < best_val) {
                best_val = v;
                best = kept[j];
            }
        }
        out[static_cast<size_t>(r)] = best;
        ci = j;
    }
}

}  // namespace

std::vector<int> smawk_leftmost_row_minima(int rows, int cols, const Entry& entry) {
    MCF_CHECK(rows >= 0 && cols > 0, "smawk: empty column set");
    std::vector<int> out(static_cast<size_t>(rows), -1);
    std::vector<int> ridx(static_cast<size_t>(rows)), cidx(static_cast<size_t>(cols));
    for (int i = 0; i < rows; ++i) ridx[static_cast<size_t>(i)] = i;
    for (int j = 0; j < cols; ++j) cidx[static_cast<size_t>(j)] = j;
    smawk_rec(ridx, cidx, entry, out);
    return out;
}

std::vector<int> smawk_rightmost_row_minima(int rows, int cols, const Entry& entry) {
    // Reverse both axes: the view stays totally monotone and its leftmost
    // minima map to rightmost minima of the original.
    auto flipped = [&](int r, int c) { return entry(rows - 1 - r, cols - 1 - c); };
    std::vector<int> rev = smawk_leftmost_row_minima(rows, cols, flipped);
    std::vector<int> out(static_cast<size_t>(rows), -1);
    for (int r = 0; r < rows; ++r)
        out[static_cast<size_t>(r)] = cols - 1 - rev[static_cast<size_t>(rows - 1 - r)];
    return out;
}

}  // namespace mcf::planar
