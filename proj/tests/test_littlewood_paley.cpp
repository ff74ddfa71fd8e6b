#include <chrono>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rbc/littlewood_paley.hpp"

using namespace rbc;
using std::numbers::e;
using std::numbers::pi;

namespace {

double spectral_peak_outside(const PeriodicField2D& f, double lo, double hi) {
    const PeriodicSpectrum s = spectrum(f);
    double worst = 0.0;
    for (int n = 0; n < f.grid.nz; ++n)
        for (int m = 0; m < f.grid.ncols(); ++m) {
            const double q = std::hypot(f.grid.qy(m), f.grid.qz(n));
            if (q <= lo || q >= hi) worst = std::max(worst, std::abs(s(m, n)));
        }
    return worst;
}

SimState roll_state(const Grid& g, double amp) {
    const ThermalStepper st(g);
    PhysicalField th(g);
    for (int j = 1; j < g.Nz - 1; ++j)
        for (int i = 0; i < g.Nx; ++i)
            th(i, j) = amp * std::sin(pi * g.z(j) / g.H) * std::cos(2 * pi * g.y(i) / g.Lambda);
    return st.make_state(th);
}

}  // namespace

TEST_CASE("filter bank partition and supports") {
    const auto g = make_periodic_grid(2 * pi, 2 * pi, 64, 64);
    const int lmax = default_ell_max(g);
    const auto bank = build_bank(g, -2, lmax);
    CHECK(bank.partition_defect() <= 1e-12);
    for (const auto& b : bank.bands)
        for (double x : b) {
            CHECK(x >= -1e-15);
            CHECK(x <= 1.0 + 1e-15);
        }
    CHECK(lp_band(0.9 / e, 0) == 0.0);
    CHECK(lp_band(e * 1.0001, 0) == 0.0);
    CHECK(lp_band(1.0, 0) > 0.0);
    for (int ell : {-3, -2, 2, 3}) CHECK(lp_band(1.0, ell) == 0.0);
    CHECK(lp_band(1.0, -1) + lp_band(1.0, 0) + lp_band(1.0, 1) == doctest::Approx(1.0));
    CHECK_THROWS(build_bank(g, 2, 1));
    CHECK_THROWS(bank.band(lmax + 1));
}

TEST_CASE("projection, reconstruction and band support") {
    std::mt19937_64 rng(1);
    const auto g = make_periodic_grid(6.0, 4.0, 96, 64, -2.0);
    const auto bank = build_bank(g, -1, default_ell_max(g));
    for (int k = 0; k < 5; ++k) {
        PeriodicField2D f(g);
        std::uniform_real_distribution<double> u(-1, 1);
        for (double& x : f.data) x = u(rng);
        CHECK(reconstruction_error(f, bank) <= 1e-12);
        for (int ell = bank.ell_min; ell <= bank.ell_max; ++ell) {
            const auto b = project_band(f, bank, ell);
            CHECK(spectral_peak_outside(b, std::exp(ell - 1.0), std::exp(ell + 1.0)) <= 1e-15 * b.max_abs());
            const auto& mult = bank.band(ell);
            for (int n = 0; n < g.nz; ++n)
                for (int m = 0; m < g.ncols(); ++m) {
                    const double q = std::hypot(g.qy(m), g.qz(n));
                    if (q <= std::exp(ell - 1.0) || q >= std::exp(ell + 1.0))
                        CHECK(mult[std::size_t(n) * g.ncols() + m] == 0.0);
                }
        }
    }
    PeriodicField2D c(g);
    for (double& x : c.data) x = 3.0;
    for (int ell = bank.ell_min; ell <= bank.ell_max; ++ell) CHECK(project_band(c, bank, ell).max_abs() <= 1e-14);
    CHECK(reconstruction_error(c, bank) <= 1e-12);
    const auto en = band_energies(c, bank);
    CHECK(en.size() == std::size_t(bank.ell_max - bank.ell_min + 1));
}

TEST_CASE("bernstein ratios on single modes are exact") {
    for (int ell : {0, 1, 2}) {
        const int m = 3;
        const double Ly = 2 * pi * m * std::exp(-double(ell));  // mode m has |q| = e^ell
        const auto g = make_periodic_grid(Ly, 1.0, 4 * m * 8, 8);
        const auto bank = build_bank(g, ell - 1, ell + 1);
        const auto f = sample(g, [&](double y, double) { return std::cos(2 * pi * m * y / Ly); });
        const auto b = project_band(f, bank, ell);
        CHECK(b.max_abs() == doctest::Approx(lp_band(std::exp(double(ell)), ell)));
        for (int s : {1, 2})
            for (double p : {1.0, 4.0 / 3.0, 2.0, 4.0}) CHECK(std::abs(bernstein_ratio(b, ell, s, p) - 1.0) <= 1e-10);
        // Off-center mode: ratio (|q| e^{-ell})^{ps}.
        const auto f2 = sample(g, [&](double y, double) { return std::sin(2 * pi * 2 * m * y / Ly); });
        for (int s : {1, 2})
            for (double p : {1.0, 2.0})
                CHECK(bernstein_ratio(f2, ell, s, p) == doctest::Approx(std::pow(2.0, p * s)).epsilon(1e-10));
    }
    const auto g = make_periodic_grid(1.0, 1.0, 8, 8);
    CHECK_THROWS(bernstein_ratio(PeriodicField2D(g), 0, 1, 2.0));
}

TEST_CASE("bernstein ratios on random band-limited fields") {
    std::mt19937_64 rng(17);
    const auto g = make_periodic_grid(4 * pi, 4 * pi, 128, 128);
    const auto bank = build_bank(g, -1, 3);
    std::uniform_real_distribution<double> u(-1, 1);
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k < 50; ++k) {
        PeriodicField2D f(g);
        for (double& x : f.data) x = u(rng);
        const int ell = 1 + k % 3;
        const auto b = project_band(f, bank, ell);
        for (int s : {1, 2})
            for (double p : {1.0, 4.0 / 3.0, 2.0}) {
                const double r = bernstein_ratio(b, ell, s, p);
                CHECK(r >= std::exp(-2 * p * s));
                CHECK(r <= std::exp(2 * p * s));
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
    }
    MESSAGE("random Bernstein ratios in [" << lo << ", " << hi << "]");
}

TEST_CASE("commutator vanishes for constant velocity") {
    std::mt19937_64 rng(5);
    const auto g = make_periodic_grid(2 * pi, 2 * pi, 64, 64);
    const auto bank = build_bank(g, -1, default_ell_max(g));
    const auto zeta = random_band_limited(rng, g, 12);
    PeriodicField2D uy(g), uz(g);
    for (double& x : uy.data) x = 1.7;
    for (double& x : uz.data) x = -0.4;
    const double scale = std::hypot(1.7, 0.4) * grad_magnitude(zeta, 1).max_abs();
    for (int ell = bank.ell_min; ell <= bank.ell_max; ++ell)
        CHECK(commutator_apply(uy, uz, bank.band(ell), zeta).max_abs() <= 1e-12 * scale);
    CHECK(commutator_apply(uy, uz, bank.band(1), PeriodicField2D(g)).max_abs() == 0.0);
}

TEST_CASE("kernel moments scale with the band index") {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<KernelMoments> km;
    for (int ell = 0; ell <= 4; ++ell) km.push_back(kernel_moments(ell));
    for (int ell = 0; ell <= 4; ++ell) {
        const double scaled = km[ell].moment * std::exp(double(ell)) / km[0].moment;
        CHECK(scaled >= 0.5);
        CHECK(scaled <= 2.0);
        CHECK(km[ell].tail_mass < 1e-3);
        CHECK(km[ell].l1 == doctest::Approx(km[0].l1).epsilon(0.1));
    }
    MESSAGE("moment e^ell: " << km[0].moment << " " << km[2].moment * std::exp(2.0) << " "
                             << km[4].moment * std::exp(4.0) << ", tail " << km[0].tail_mass << ", "
                             << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s");
}

TEST_CASE("commutator bounds on random samples") {
    std::mt19937_64 rng(23);
    const auto g = make_periodic_grid(2 * pi, 2 * pi, 64, 64);
    const auto bank = build_bank(g, -1, default_ell_max(g));
    const int ell = 1;
    const KernelMoments km = kernel_moments(ell, 0.0, 512);
    double worst1 = 0.0, worst2 = 0.0;
    for (int k = 0; k < 10; ++k) {
        const auto psi = random_band_limited(rng, g, 8);
        const auto uy = derivative(psi, 0, 1), uz = -1.0 * derivative(psi, 1, 0);
        const auto zeta = random_band_limited(rng, g, 8);
        const auto a = commutator_bound(uy, uz, zeta, bank, ell, 4.0 / 3.0, 2.0, CommutatorBound::zeta_moment, km);
        const auto b = commutator_bound(uy, uz, zeta, bank, ell, 4.0 / 3.0, 4.0, CommutatorBound::grad_zeta_moment, km);
        CHECK(std::isfinite(a.ratio()));
        CHECK(std::isfinite(b.ratio()));
        CHECK(a.lhs > 0.0);
        worst1 = std::max(worst1, a.ratio());
        worst2 = std::max(worst2, b.ratio());
    }
    MESSAGE("max commutator ratios " << worst1 << " " << worst2);
    const auto z = random_band_limited(rng, g, 4);
    CHECK_THROWS(commutator_bound(z, z, z, bank, ell, 2.0, 2.0, CommutatorBound::zeta_moment, km));
    CHECK_THROWS(commutator_bound(z, z, z, bank, ell, 0.5, 2.0, CommutatorBound::zeta_moment, km));
}

TEST_CASE("narrow band residual") {
    const double sigma = 0.1;
    const auto g = narrow_band_grid(sigma);
    const double dq = 2 * pi / g.Ly;
    CHECK(dq == doctest::Approx(sigma / 4));
    const double q0y = 40 * dq, q0z = 20 * dq;  // (1.0, 0.5)

    const auto single = sample(g, [&](double y, double z) { return std::cos(q0y * y + q0z * z); });
    const auto rs = narrow_band_residual(q0y, q0z, sigma, single, 2.0);
    CHECK(rs.lhs <= 1e-20 * rs.rhs);

    // Two modes inside B_sigma(q0): ratio (a^2 l1^2 + b^2 l2^2) / (sigma^2 (a^2 + b^2)).
    const double a = 0.7, b = -1.3;
    const double q1y = q0y + 2 * dq, q1z = q0z, q2y = q0y, q2z = q0z - 3 * dq;
    const auto two = sample(g, [&](double y, double z) {
        return a * std::cos(q1y * y + q1z * z) + b * std::cos(q2y * y + q2z * z);
    });
    const double q02 = q0y * q0y + q0z * q0z;
    const double l1 = q1y * q1y + q1z * q1z - q02, l2 = q2y * q2y + q2z * q2z - q02;
    const double expect = (a * a * l1 * l1 + b * b * l2 * l2) / (sigma * sigma * (a * a + b * b));
    const auto r2 = narrow_band_residual(q0y, q0z, sigma, two, 2.0);
    CHECK(std::abs(r2.ratio() - expect) <= 1e-10 * expect);

    const auto far = sample(g, [&](double y, double) { return std::cos(2 * q0y * y); });
    CHECK_THROWS(narrow_band_residual(q0y, q0z, sigma, far, 2.0));
    CHECK_THROWS(narrow_band_residual(3.0, 0.0, sigma, single, 2.0));
    CHECK_THROWS(narrow_band_residual(0.2, 0.0, sigma, single, 2.0));
}

TEST_CASE("narrow band random suite is stable across sigma") {
    std::vector<double> maxima;
    for (double sigma : {0.05, 0.1, 0.2}) {
        const auto g = narrow_band_grid(sigma);
        std::mt19937_64 rng(31);
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            const auto z = random_narrow_band(rng, g, 1.0, 0.5, sigma);
            worst = std::max(worst, narrow_band_residual(1.0, 0.5, sigma, z, 2.0).ratio());
            CHECK(std::isfinite(narrow_band_residual(1.0, 0.5, sigma, z, 4.0 / 3.0).ratio()));
        }
        maxima.push_back(worst);
    }
    MESSAGE("max ratios " << maxima[0] << " " << maxima[1] << " " << maxima[2]);
    const double ref = maxima[1];
    for (double m : maxima) {
        CHECK(m >= 0.5 * ref);
        CHECK(m <= 1.5 * ref);
    }
}

TEST_CASE("maximal-regularity checks") {
    const Grid g = make_grid(8.0, 16.0, 32, 65);
    const ThermalStepper st(g);
    const std::vector<SimState> cond{st.init_state("conduction", 0.0, 1), st.init_state("conduction", 0.0, 1)};
    const auto c2 = maxreg_l2_check(cond, 2.0);
    CHECK(c2.lhs == 0.0);
    CHECK(c2.rhs == 0.0);
    CHECK(c2.ratio() == 0.0);
    for (auto level : {MaxRegLevel::first, MaxRegLevel::second}) {
        const auto t = maxreg_lr_terms(cond, level, 8, 2, 2.0);
        CHECK(t.lhs == 0.0);
        for (double x : t.terms) CHECK(x == 0.0);
        CHECK(maxreg_lr_check(cond, level, 1, 1, 2.0).ratio() == 0.0);
    }

    const std::vector<SimState> roll{roll_state(g, 0.3), roll_state(g, 0.2)};
    const auto r2 = maxreg_l2_check(roll, 2.0);
    CHECK(r2.lhs > 0.0);
    CHECK(std::isfinite(r2.ratio()));
    for (auto level : {MaxRegLevel::first, MaxRegLevel::second}) {
        const auto lo = maxreg_lr_terms(roll, level, 1, 1, 2.0);
        const auto hi = maxreg_lr_terms(roll, level, 1, 3, 2.0);
        CHECK(lo.lhs > 0.0);
        CHECK(hi.terms[4] < lo.terms[4]);
        CHECK(std::isfinite(maxreg_lr_check(roll, level, 9, 3, 2.0).ratio()));
    }
    CHECK_THROWS(maxreg_l2_check({}, 2.0));
    CHECK_THROWS(maxreg_l2_check(roll, 2.0, 3));
    CHECK_THROWS(maxreg_lr_check(roll, MaxRegLevel::first, 1, 1, 5.0));
}
