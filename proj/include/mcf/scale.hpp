#pragma once

#include <bit>
#include <cstdint>

#include "mcf/graph.hpp"
#include "mcf/ints.hpp"

namespace mcf {

// Fixed-point cost scaling parameters.
//
// All input costs are premultiplied by 2^shift with shift = ceil(log2(n+1))+2,
// so 2^shift >= 4(n+1). epsilon is always a power of two and every c' value,
// price and distance stays an integer multiple of eps/2 across all scales;
// eps/2 >= 1 in scaled units until the termination condition
// eps*(n+1) <= 2^shift (i.e. eps <= 1/(n+1) in original units) is reached.
struct CostScale {
    int shift = 0;
    Price unit = 1;             // 2^shift, the scaled value of 1
    std::int64_t max_cost = 0;  // C, max |cost| over original edges
    Price initial_eps = 0;      // largest power of two <= C * 2^shift

    static CostScale make(const MultiGraph& g) {
        CostScale cs;
        std::int64_t n = g.num_vertices();
        cs.shift = std::bit_width(static_cast<std::uint64_t>(n)) + 2;  // ceil(log2(n+1)) + 2
        cs.unit = Price{1} << cs.shift;
        cs.max_cost = g.max_abs_cost();
        // Abort early unless 32*n*m*C*2^shift fits the integer domain; all
        // intermediate scaled values stay below that bound.
        Price budget = checked_mul(32, std::max<std::int64_t>(n, 1));
        budget = checked_mul(budget, std::max<std::int64_t>(g.num_original(), 1));
        budget = checked_mul(budget, std::max<std::int64_t>(cs.max_cost, 1));
        budget = checked_mul(budget, cs.unit);
        (void)budget;
        if (cs.max_cost > 0) {
            Price scaled_c = checked_mul(cs.max_cost, cs.unit);
            cs.initial_eps = std::bit_floor(static_cast<std::uint64_t>(scaled_c));
        }
        return cs;
    }

    Price scaled(std::int64_t raw_cost) const {
        return static_cast<Price>(raw_cost) << shift;
    }

    // True once eps <= 1/(n+1) in original units; a refine call at such an
    // eps certifies optimality for integral costs, so it is the last one.
    bool done(Price eps, int n) const { return eps * (n + 1) <= unit; }

    // Number of refine calls the scaling loop performs; the solver asserts
    // its observed count against this.
    int expected_scales(int n) const {
        int count = 0;
        for (Price eps = initial_eps; eps > 0; eps >>= 1) {
            ++count;
            if (done(eps, n)) break;
        }
        return count;
    }
};

}  // namespace mcf
