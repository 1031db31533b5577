#pragma once

#include <string>

#include "mcf/generate.hpp"
#include "mcf/solver.hpp"

namespace mcf {

// DIMACS-style unit-capacity min-cost instance text:
//   c <comment>
//   p mcf <n> <m>
//   a <u> <v> <cost>          one per arc, 1-based vertices, capacity 1
//   e <v> <nbr> <nbr> ...     optional, cyclic neighbor order of the simple
//                             support graph (one line per vertex)
// Malformed input raises parse_error with the offending line number.
Instance parse_instance(const std::string& text);

std::string serialize_instance(const Instance& inst);

// JSON solution files used by the CLI verify subcommand.
std::string serialize_solution(const Solution& sol);
Solution parse_solution(const std::string& text);

}  // namespace mcf
