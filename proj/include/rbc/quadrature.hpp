#pragma once

#include <vector>

namespace rbc {

/// A vertical profile sampled either on the nodes z_j = j dz or on the cell
/// centers z_{j+1/2}.
struct Profile {
    enum class Sampling { nodes, centers };
    std::vector<double> values;
    Sampling sampling = Sampling::nodes;
    double dz = 0.0;

    double z(std::size_t j) const { return sampling == Sampling::nodes ? j * dz : (j + 0.5) * dz; }
};

/// Weight functions used in the vertical integrals.
struct Weight {
    enum class Kind { one, inv_z, inv_z_pow, z_pow, rho };
    Kind kind = Kind::one;
    double power = 0.0;
    double delta = 0.0;
    double alpha = 0.0;

    static Weight one() { return {}; }
    static Weight inv_z() { return {Kind::inv_z, 1.0}; }
    static Weight inv_z_pow(double m) { return {Kind::inv_z_pow, m}; }
    static Weight z_pow(double m) { return {Kind::z_pow, m}; }
    /// rho(z) = z^{1+alpha} / delta^alpha below delta, z above.
    static Weight rho(double delta, double alpha) { return {Kind::rho, 0.0, delta, alpha}; }

    bool singular() const { return kind == Kind::inv_z || kind == Kind::inv_z_pow; }
    double operator()(double z) const;
};

/// Integral of weight * f over [a, b]. Node samples use the trapezoid rule,
/// center samples the midpoint rule; partially covered intervals contribute
/// in proportion to their overlap. Singular weights require center samples.
double weighted_z_integral(const Profile& f, const Weight& weight, double a, double b);

/// Node profile -> cell-center profile by four-point Lagrange interpolation
/// (exact for cubics).
Profile to_cell_centers(const Profile& nodes);

}  // namespace rbc
