#pragma once

#include <span>
#include <vector>

namespace rbc::fd {

/// Finite-difference weights for the m-th derivative at x0 from nodes x
/// (Fornberg's recursion).
std::vector<double> weights(double x0, std::span<const double> x, int m);

}  // namespace rbc::fd
