#include "rbc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbc {

double Weight::operator()(double z) const {
    switch (kind) {
        case Kind::one: return 1.0;
        case Kind::inv_z: return 1.0 / z;
        case Kind::inv_z_pow: return std::pow(z, -power);
        case Kind::z_pow: return std::pow(z, power);
        case Kind::rho: return z <= delta ? std::pow(z, 1.0 + alpha) / std::pow(delta, alpha) : z;
    }
    return 1.0;
}

double weighted_z_integral(const Profile& f, const Weight& weight, double a, double b) {
    if (f.dz <= 0.0) throw std::invalid_argument("weighted_z_integral: profile spacing must be positive");
    if (b < a) throw std::invalid_argument("weighted_z_integral: empty range");
    const std::size_t n = f.values.size();
    double sum = 0.0;
    if (f.sampling == Profile::Sampling::nodes) {
        if (weight.singular() && a <= 0.0)
            throw std::invalid_argument("weighted_z_integral: singular weight needs cell-center samples");
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const double z0 = f.z(j), z1 = f.z(j + 1);
            const double lo = std::max(a, z0), hi = std::min(b, z1);
            if (hi <= lo) continue;
            // Trapezoid on the covered part, values interpolated linearly.
            const double g0 = f.values[j] * weight(z0);
            const double g1 = f.values[j + 1] * weight(z1);
            const double t0 = (lo - z0) / f.dz, t1 = (hi - z0) / f.dz;
            const double ga = g0 + (g1 - g0) * t0, gb = g0 + (g1 - g0) * t1;
            sum += 0.5 * (ga + gb) * (hi - lo);
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            const double zc = f.z(j);
            const double lo = std::max(a, zc - 0.5 * f.dz), hi = std::min(b, zc + 0.5 * f.dz);
            if (hi <= lo) continue;
            sum += f.values[j] * weight(zc) * (hi - lo);
        }
    }
    return sum;
}

Profile to_cell_centers(const Profile& nodes) {
    if (nodes.sampling != Profile::Sampling::nodes) throw std::invalid_argument("to_cell_centers: expects node samples");
    const std::size_t n = nodes.values.size();
    if (n < 4) throw std::invalid_argument("to_cell_centers: need at least four nodes");
    Profile out;
    out.sampling = Profile::Sampling::centers;
    out.dz = nodes.dz;
    out.values.resize(n - 1);
    const auto& v = nodes.values;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (j == 0) {
            out.values[j] = (5.0 * v[0] + 15.0 * v[1] - 5.0 * v[2] + v[3]) / 16.0;
        } else if (j + 2 == n) {
            out.values[j] = (5.0 * v[n - 1] + 15.0 * v[n - 2] - 5.0 * v[n - 3] + v[n - 4]) / 16.0;
        } else {
            out.values[j] = (-v[j - 1] + 9.0 * v[j] + 9.0 * v[j + 1] - v[j + 2]) / 16.0;
        }
    }
    return out;
}

}  // namespace rbc
