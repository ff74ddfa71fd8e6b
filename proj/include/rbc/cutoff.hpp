#pragma once

#include <array>
#include <vector>

#include "rbc/field.hpp"

namespace rbc {

/// Smooth ramp s(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}) on [0, 1], with
/// s = 0 for t <= 0 and s = 1 for t >= 1. Returns {s, s', s'', s'''}.
std::array<double, 4> smoothstep(double t);

/// Even, 2H-periodic cutoff eta(z): 1 on [-delta, delta], 0 outside
/// [-2 delta, 2 delta], ramped by 1 - s((|z| - delta) / delta).
struct Cutoff {
    double delta = 0.0;
    double H = 0.0;
    std::vector<double> values, deriv1, deriv2, deriv3;  // at nodes z_j, j = 0..Nz-1

    /// {eta, eta', eta'', eta'''} at any z, using the even 2H-periodic continuation.
    std::array<double, 4> eval(double z) const;
    /// max |eta'| * delta.
    double slope_constant() const;
};

/// Throws std::invalid_argument unless 0 < 2 delta < H.
Cutoff make_cutoff(const Grid& grid, double delta);

}  // namespace rbc
