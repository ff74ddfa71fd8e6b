#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbc/inequality.hpp"

namespace rbc {

/// hardy, interp, lp, commutator, narrowband.
const std::vector<std::string>& suite_names();

/// Runs one seeded randomized suite. Records with a fixed constant carry a
/// real pass flag; measured ones only fail when non-finite. Throws for an
/// unknown tag.
std::vector<InequalityResult> run_suite(const std::string& tag, std::uint64_t seed);

bool all_pass(const std::vector<InequalityResult>& results);

/// JSON array of {name, lhs, rhs, constant_used, pass, witness}.
std::string results_to_json(const std::vector<InequalityResult>& results);

}  // namespace rbc
