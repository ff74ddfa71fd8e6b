#include "rbc/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbc {

namespace {

// Logistic L(x) = 1 / (1 + e^x) and its first three derivatives, evaluated
// without overflow for large |x|.
std::array<double, 4> logistic(double x) {
    const double e = std::exp(-std::abs(x));
    const double L = x >= 0.0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
    const double q = L * (1.0 - L);
    return {L, -q, q * (1.0 - 2.0 * L), -q * (1.0 - 6.0 * L + 6.0 * L * L)};
}

}  // namespace

std::array<double, 4> smoothstep(double t) {
    if (t <= 0.0) return {0.0, 0.0, 0.0, 0.0};
    if (t >= 1.0) return {1.0, 0.0, 0.0, 0.0};
    // s(t) = L(g(t)) with g(t) = 1/t - 1/(1-t).
    const double u = 1.0 - t;
    const double g = 1.0 / t - 1.0 / u;
    const double g1 = -1.0 / (t * t) - 1.0 / (u * u);
    const double g2 = 2.0 / (t * t * t) - 2.0 / (u * u * u);
    const double g3 = -6.0 / (t * t * t * t) - 6.0 / (u * u * u * u);
    const auto L = logistic(g);
    const double s1 = L[1] * g1;
    const double s2 = L[2] * g1 * g1 + L[1] * g2;
    const double s3 = L[3] * g1 * g1 * g1 + 3.0 * L[2] * g1 * g2 + L[1] * g3;
    return {L[0], s1, s2, s3};
}

std::array<double, 4> Cutoff::eval(double z) const {
    const double period = 2.0 * H;
    double zz = std::fmod(z, period);
    if (zz < 0.0) zz += period;
    double sign = 1.0;
    if (zz > H) {
        zz = period - zz;
        sign = -1.0;  // odd derivatives flip under z -> -z
    }
    if (zz <= delta) return {1.0, 0.0, 0.0, 0.0};
    if (zz >= 2.0 * delta) return {0.0, 0.0, 0.0, 0.0};
    const auto s = smoothstep((zz - delta) / delta);
    const double d = delta;
    return {1.0 - s[0], -sign * s[1] / d, -s[2] / (d * d), -sign * s[3] / (d * d * d)};
}

double Cutoff::slope_constant() const {
    double m = 0.0;
    for (double v : deriv1) m = std::max(m, std::abs(v));
    return m * delta;
}

Cutoff make_cutoff(const Grid& grid, double delta) {
    if (!(delta > 0.0) || !(2.0 * delta < grid.H))
        throw std::invalid_argument("make_cutoff: need 0 < 2*delta < H");
    Cutoff c;
    c.delta = delta;
    c.H = grid.H;
    c.values.resize(grid.Nz);
    c.deriv1.resize(grid.Nz);
    c.deriv2.resize(grid.Nz);
    c.deriv3.resize(grid.Nz);
    for (int j = 0; j < grid.Nz; ++j) {
        const auto e = c.eval(grid.z(j));
        c.values[j] = e[0];
        c.deriv1[j] = e[1];
        c.deriv2[j] = e[2];
        c.deriv3[j] = e[3];
    }
    return c;
}

}  // namespace rbc
