#include "rbc/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rbc/banded.hpp"

namespace rbc {

PhysicalField temperature(const SimState& s) {
    PhysicalField T = s.theta;
    T.parity = Parity::none;
    T.bc = Boundary::dirichlet(1.0, 0.0);
    for (int j = 0; j < s.grid.Nz; ++j) {
        const double base = 1.0 - s.grid.z(j) / s.grid.H;
        for (int i = 0; i < s.grid.Nx; ++i) T(i, j) += base;
    }
    return T;
}

ThermalStepper::ThermalStepper(const Grid& grid) : grid_(grid), stokes_(std::make_shared<StokesSolver>(grid)) {}

SimState ThermalStepper::make_state(PhysicalField theta, double t) const {
    const double tol = 1e-12 * std::max(1.0, theta.max_abs());
    for (int i = 0; i < grid_.Nx; ++i)
        if (std::abs(theta(i, 0)) > tol || std::abs(theta(i, grid_.Nz - 1)) > tol)
            throw std::invalid_argument("make_state: theta must vanish at the walls");
    theta.bc = Boundary::homogeneous();
    theta.parity = Parity::odd;
    SimState s;
    s.grid = grid_;
    s.t = t;
    s.u = stokes_->velocity(theta);
    s.u.v.parity = Parity::even;
    s.u.w.parity = Parity::odd;
    s.theta = std::move(theta);
    return s;
}

SimState ThermalStepper::init_state(const std::string& kind, double amplitude, std::uint64_t seed) const {
    if (!(amplitude >= 0.0)) throw std::invalid_argument("init_state: amplitude must be non-negative");
    PhysicalField theta(grid_, Boundary::homogeneous(), Parity::odd);
    long clipped = 0;
    if (kind == "conduction") {
        // theta = 0
    } else if (kind == "perturbed") {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> noise(-amplitude / 10.0, amplitude / 10.0);
        const double kx = 2.0 * std::numbers::pi / grid_.Lambda;
        for (int j = 1; j < grid_.Nz - 1; ++j) {
            const double sz = std::sin(std::numbers::pi * grid_.z(j) / grid_.H);
            for (int i = 0; i < grid_.Nx; ++i) theta(i, j) = amplitude * sz * std::cos(kx * grid_.y(i)) + noise(rng);
        }
        SpectralField th = to_spectral(theta);
        dealias(th);
        theta.data = to_physical(th).data;
        for (int j = 0; j < grid_.Nz; ++j) {
            const double base = 1.0 - grid_.z(j) / grid_.H;
            for (int i = 0; i < grid_.Nx; ++i) {
                const double T = theta(i, j) + base;
                const double c = std::clamp(T, 0.0, 1.0);
                if (c != T) {
                    ++clipped;
                    theta(i, j) = c - base;
                }
            }
        }
        for (int i = 0; i < grid_.Nx; ++i) theta(i, 0) = theta(i, grid_.Nz - 1) = 0.0;
    } else {
        throw std::invalid_argument("init_state: unknown kind '" + kind + "'");
    }
    SimState s = make_state(std::move(theta));
    s.clip_count = clipped;
    return s;
}

PhysicalField ThermalStepper::advection(const SimState& s) const {
    SpectralField th = to_spectral(s.theta);
    dealias(th);
    PhysicalField theta = to_physical(th);
    theta.parity = Parity::odd;
    const PhysicalField ty = to_physical(d_dy(th, 1));
    const PhysicalField tz = d_dz(theta, 1);
    PhysicalField a(grid_);
    for (std::size_t n = 0; n < a.data.size(); ++n) a.data[n] = s.u.v.data[n] * ty.data[n] + s.u.w.data[n] * tz.data[n];
    SpectralField ah = to_spectral(a);
    dealias(ah);
    return to_physical(ah);
}

SimState ThermalStepper::step(const SimState& s, double dt, const StepOptions& opt) const {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    const int nz = grid_.Nz;
    const int nk = grid_.nk();
    SpectralField rhs = to_spectral(s.theta);
    dealias(rhs);
    PhysicalField forcing(grid_);
    if (opt.advect) {
        const PhysicalField a = advection(s);
        for (std::size_t n = 0; n < forcing.data.size(); ++n) forcing.data[n] -= a.data[n];
    }
    if (opt.buoyancy)
        for (std::size_t n = 0; n < forcing.data.size(); ++n) forcing.data[n] += s.u.w.data[n] / grid_.H;
    if (opt.source)
        for (int j = 0; j < nz; ++j)
            for (int i = 0; i < grid_.Nx; ++i) forcing(i, j) += opt.source(grid_.y(i), grid_.z(j), s.t);
    const SpectralField fh = to_spectral(forcing);
    for (std::size_t n = 0; n < rhs.data.size(); ++n) rhs.data[n] += dt * fh.data[n];

    SpectralField next(grid_, Boundary::homogeneous(), Parity::odd);
    const int n = nz - 2;
    const double h2 = grid_.dz * grid_.dz;
    std::vector<double> lo(n, -dt / h2), up(n, -dt / h2), di(n);
    std::vector<cplx> b(n);
    const int kc = grid_.dealias_cutoff();
    for (int m = 0; m <= std::min(kc, nk - 1); ++m) {
        const double k2 = grid_.k(m) * grid_.k(m);
        std::fill(di.begin(), di.end(), 1.0 + dt * (2.0 / h2 + k2));
        for (int j = 1; j < nz - 1; ++j) b[j - 1] = rhs(m, j);
        const auto x = solve_tridiagonal(lo, di, up, b);
        for (int j = 1; j < nz - 1; ++j) next(m, j) = x[j - 1];
    }

    SimState out;
    out.grid = grid_;
    out.t = s.t + dt;
    out.step = s.step + 1;
    out.clip_count = s.clip_count;
    out.theta = to_physical(next);
    out.theta.bc = Boundary::homogeneous();
    out.theta.parity = Parity::odd;
    if (opt.update_velocity) {
        out.u = stokes_->velocity(next);
        out.u.v.parity = Parity::even;
        out.u.w.parity = Parity::odd;
    } else {
        out.u = s.u;
    }
    return out;
}

double cfl_dt(const SimState& s, double cfl, double dt_max) {
    if (!(cfl > 0.0) || cfl > 1.0) throw std::invalid_argument("cfl_dt: cfl must be in (0, 1]");
    const double vmax = s.u.v.max_abs();
    const double wmax = s.u.w.max_abs();
    double dt = dt_max;
    if (vmax > 0.0) dt = std::min(dt, cfl * s.grid.dy() / vmax);
    if (wmax > 0.0) dt = std::min(dt, cfl * s.grid.dz / wmax);
    return dt;
}

MaxPrinciple max_principle_monitor(const SimState& s) {
    const PhysicalField T = temperature(s);
    MaxPrinciple m;
    m.t_min = *std::min_element(T.data.begin(), T.data.end());
    m.t_max = *std::max_element(T.data.begin(), T.data.end());
    m.violation = std::max({0.0, m.t_max - 1.0, -m.t_min});
    return m;
}

bool all_finite(const SimState& s) {
    auto ok = [](const PhysicalField& f) {
        return std::all_of(f.data.begin(), f.data.end(), [](double x) { return std::isfinite(x); });
    };
    return ok(s.theta) && ok(s.u.v) && ok(s.u.w);
}

}  // namespace rbc
