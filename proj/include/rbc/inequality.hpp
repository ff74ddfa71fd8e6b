#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rbc/periodic.hpp"

namespace rbc {

/// Outcome of one inequality evaluation: pass iff lhs <= constant_used * rhs
/// up to a relative quadrature tolerance.
struct InequalityResult {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_used = 0.0;
    bool pass = false;
    std::string witness;

    /// lhs / rhs, 0 when both vanish.
    double ratio() const;
};

/// Fixed-constant result.
InequalityResult make_result(std::string name, double lhs, double rhs, double constant, std::string witness,
                             double rel_tol = 1e-8);
/// Measured-constant result: constant_used is the observed ratio.
InequalityResult measured_result(std::string name, double lhs, double rhs, std::string witness);

/// f, f', f'' at a point.
struct Jet {
    double f = 0.0, d1 = 0.0, d2 = 0.0;
};

/// Smooth test function on [a, b], evaluated analytically.
struct TestFunction1D {
    std::function<Jet(double)> fn;
    double a = 0.0, b = 0.0;
    std::string witness;
    // Boundary tags, verified at construction.
    bool zero_at_a = false, flat_at_a = false, zero_at_b = false, flat_at_b = false;

    Jet operator()(double z) const { return fn(z); }
};

/// Samples the function to set the boundary tags (|phi| <= 1e-12 * scale).
TestFunction1D make_test_function(std::function<Jet(double)> fn, double a, double b, std::string witness);
TestFunction1D scaled(const TestFunction1D& f, double c);

/// Composite Gauss-Legendre quadrature on panels with breakpoints
/// a + (b - a)(k/n)^grading; grading > 1 clusters them toward a.
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 64, double grading = 1.0);

/// int z phi'^2 <= int z^3 phi''^2 on [0, H]; needs phi(H) = phi'(H) = 0.
InequalityResult check_hardy_standard(const TestFunction1D& phi, int panels = 64);
/// int_delta^H phi^2 / z <= 4 ln^2(H/delta) int_delta^H z phi'^2; needs phi(delta) = 0.
InequalityResult check_hardy_critical(const TestFunction1D& phi, double delta, double H, int panels = 64);
/// Weighted boundary-layer Hardy bound for a clamped w_hat with phi = w_hat / z^2.
InequalityResult check_hardy_weighted(const TestFunction1D& w_hat, double delta, double alpha, int panels = 64);

/// (int |z'|^{4/3})^{3/4} vs (int z^2)^{1/2} + int |z''| for periodic samples on [0, b).
InequalityResult check_ehrling(const std::vector<double>& zeta, double b);
/// (int <|grad z|^{4/3}>)^{3/4} vs (int <z^2>)^{1/4} (int <|grad^2 z|>)^{1/2}.
InequalityResult check_interp_grad(const PeriodicField2D& zeta);

/// Maximum-principle interpolation bounds, evaluated direction by direction
/// and summed:
///   fourth_power:      sum_i int (d_i z)^4 <= 9 sup|z|^2 sum_i int (d_i^2 z)^2
///   second_derivative: sum_i int (d_i^2 z)^2 <= 9^{1/3} sup|z|^{2/3} sum_i int |d_i^3 z|^{4/3}
enum class MaxPrincipleBound { fourth_power, second_derivative };
InequalityResult check_interp_max_principle(const PeriodicField2D& zeta, MaxPrincipleBound which);
std::string to_string(MaxPrincipleBound which);

// Seeded random test functions.
/// phi = g - g(H) - g'(H)(z - H) with g a random Fourier series on [0, H].
TestFunction1D random_hardy_standard(std::mt19937_64& rng, double H, int modes = 6);
/// phi = g - g(delta) on [delta, H].
TestFunction1D random_hardy_critical(std::mt19937_64& rng, double delta, double H, int modes = 6);
/// w_hat = z^2 (H - z)^2 g.
TestFunction1D random_clamped(std::mt19937_64& rng, double H, int modes = 6);
/// Random trigonometric polynomial with |ky|, |kz| <= kmax lattice modes.
PeriodicField2D random_band_limited(std::mt19937_64& rng, const PeriodicGrid& g, int kmax);
/// Random periodic samples on n points with at most kmax modes.
std::vector<double> random_periodic_1d(std::mt19937_64& rng, int n, int kmax);

enum class SearchFamily { hardy_critical, hardy_standard, zero };
struct SearchOptions {
    double H = 10.0;
    double delta = 1e-2;
    int restarts = 4;
    std::uint64_t seed = 1;
};
struct SearchResult {
    double best_ratio = 0.0;
    std::vector<double> params;
    std::string witness;
    int evaluations = 0;
};
/// Maximizes lhs/rhs (without the fixed constant) over a parameter box by
/// coordinate search with seeded restarts. Throws when budget is 0.
SearchResult extremal_ratio_search(SearchFamily family, int budget, const SearchOptions& opt = {});
/// Members of the searched families.
TestFunction1D hardy_critical_member(const std::vector<double>& c, double delta, double H);
TestFunction1D hardy_standard_member(double m, double H);

}  // namespace rbc
