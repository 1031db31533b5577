#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace mcf {

// Scaled fixed-point domain for costs, prices and distances.
using Price = std::int64_t;
using VertexId = std::int32_t;
using EdgeId = std::int32_t;

// Sentinel for "unreachable". Strictly greater than any legal distance the
// engine can produce (checked at setup time); never used as an arithmetic
// operand.
inline constexpr Price kInf = std::numeric_limits<Price>::max() / 4;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A violated invariant or contract. The CLI maps this to exit code 3.
struct invariant_error : error {
    using error::error;
};

struct overflow_error : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

[[noreturn]] inline void fail_invariant(const std::string& what) {
    throw invariant_error(what);
}

#define MCF_CHECK(cond, msg)                                    \
    do {                                                        \
        if (!(cond)) ::mcf::fail_invariant(std::string(msg));   \
    } while (0)

#ifdef NDEBUG
#define MCF_DCHECK(cond, msg) ((void)0)
#else
#define MCF_DCHECK(cond, msg) MCF_CHECK(cond, msg)
#endif

inline Price checked_add(Price a, Price b) {
    Price r;
    if (__builtin_add_overflow(a, b, &r) || r >= kInf || r <= -kInf)
        throw overflow_error("integer overflow in scaled-cost arithmetic");
    return r;
}

inline Price checked_mul(Price a, Price b) {
    Price r;
    if (__builtin_mul_overflow(a, b, &r) || r >= kInf || r <= -kInf)
        throw overflow_error("integer overflow in scaled-cost arithmetic");
    return r;
}

// Least multiple of z strictly greater than y; z > 0.
inline Price round_to(Price y, Price z) {
    MCF_DCHECK(z > 0, "round_to: z must be positive");
    Price q = y / z;
    if (y % z < 0) --q;
    return (q + 1) * z;
}

}  // namespace mcf
