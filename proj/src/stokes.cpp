#include "rbc/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbc {

SpectralField dz_clamped(const SpectralField& f) {
    SpectralField out(f.grid, Boundary::free(), Parity::none);
    const int nk = f.grid.nk();
    const int nz = f.grid.Nz;
    const double s = 0.5 / f.grid.dz;
    for (int j = 1; j < nz - 1; ++j)
        for (int m = 0; m < nk; ++m) out(m, j) = s * (f(m, j + 1) - f(m, j - 1));
    return out;
}

StokesSolver::StokesSolver(const Grid& grid) : grid_(grid), biharmonic_(grid.nk()) {
    const int n = grid.Nz - 2;
    const double h2 = grid.dz * grid.dz;
    const double h4 = h2 * h2;
    for (int m = 1; m < grid.nk(); ++m) {
        const double k = grid.k(m);
        const double k2 = k * k;
        std::vector<std::vector<double>> bands(5, std::vector<double>(n));
        for (int i = 0; i < n; ++i) {
            // Ghost nodes w_{-1} = w_1 and w_{Nz} = w_{Nz-2} fold into the end diagonals.
            const double d4 = (i == 0 || i == n - 1) ? 7.0 : 6.0;
            bands[0][i] = 1.0 / h4;
            bands[1][i] = -4.0 / h4 - 2.0 * k2 / h2;
            bands[2][i] = d4 / h4 + 4.0 * k2 / h2 + k2 * k2;
            bands[3][i] = -4.0 / h4 - 2.0 * k2 / h2;
            bands[4][i] = 1.0 / h4;
        }
        biharmonic_[m] = BandedLU(n, 2, 2, bands);
    }
}

SpectralField StokesSolver::solve_w(const SpectralField& T) const {
    const int nz = grid_.Nz;
    const int nyq = grid_.Nx / 2;
    SpectralField w(grid_, Boundary::homogeneous(), Parity::odd);
    std::vector<cplx> x(nz - 2);
    for (int m = 1; m < grid_.nk(); ++m) {
        if (m == nyq) continue;
        const double k2 = grid_.k(m) * grid_.k(m);
        for (int j = 1; j < nz - 1; ++j) x[j - 1] = k2 * T(m, j);
        biharmonic_[m].solve_in_place(x);
        for (int j = 1; j < nz - 1; ++j) w(m, j) = x[j - 1];
    }
    return w;
}

SpectralField StokesSolver::recover_v(const SpectralField& w) const {
    SpectralField dw = dz_clamped(w);
    SpectralField v(grid_, Boundary::homogeneous(), Parity::even);
    const int nyq = grid_.Nx / 2;
    for (int m = 1; m < grid_.nk(); ++m) {
        if (m == nyq) continue;
        const cplx factor(0.0, 1.0 / grid_.k(m));
        for (int j = 0; j < grid_.Nz; ++j) v(m, j) = factor * dw(m, j);
    }
    return v;
}

std::vector<cplx> solve_pressure_mode(double k, double dz, const std::vector<cplx>& rhs, cplx g_bottom, cplx g_top) {
    const std::size_t n = rhs.size();
    if (n < 3) throw std::invalid_argument("solve_pressure_mode: need at least three nodes");
    if (k == 0.0) throw std::invalid_argument("solve_pressure_mode: k = 0 is singular");
    const double h2 = dz * dz;
    std::vector<double> lo(n, 1.0 / h2), di(n, -2.0 / h2 - k * k), up(n, 1.0 / h2);
    std::vector<cplx> b = rhs;
    up[0] = 2.0 / h2;
    b[0] += 2.0 * g_bottom / dz;
    lo[n - 1] = 2.0 / h2;
    b[n - 1] -= 2.0 * g_top / dz;
    return solve_tridiagonal(lo, di, up, std::move(b));
}

SpectralField StokesSolver::solve_pressure(const SpectralField& T) const {
    const int nz = grid_.Nz;
    const double dz = grid_.dz;
    const SpectralField w = solve_w(T);
    SpectralField Tu = T;
    Tu.parity = Parity::none;
    const SpectralField dT = d_dz(Tu, 1);
    SpectralField p(grid_);
    // Mean mode: p0' = T0 exactly (w0 = 0), integrated with the trapezoid rule.
    {
        std::vector<cplx> p0(nz);
        p0[0] = 0.0;
        for (int j = 1; j < nz; ++j) p0[j] = p0[j - 1] + 0.5 * dz * (T(0, j - 1) + T(0, j));
        cplx mean = 0.0;
        for (int j = 0; j < nz; ++j) mean += (j == 0 || j == nz - 1 ? 0.5 : 1.0) * p0[j];
        mean /= double(nz - 1);
        for (int j = 0; j < nz; ++j) p(0, j) = p0[j] - mean;
    }
    const double h2 = dz * dz;
    std::vector<cplx> rhs(nz);
    for (int m = 1; m < grid_.nk(); ++m) {
        if (m == grid_.Nx / 2) continue;
        for (int j = 0; j < nz; ++j) rhs[j] = dT(m, j);
        // d^2 w / dz^2 at the walls from the one-sided stencil (2, -5, 4, -1).
        const cplx wzz0 = (2.0 * w(m, 0) - 5.0 * w(m, 1) + 4.0 * w(m, 2) - w(m, 3)) / h2;
        const cplx wzzH = (2.0 * w(m, nz - 1) - 5.0 * w(m, nz - 2) + 4.0 * w(m, nz - 3) - w(m, nz - 4)) / h2;
        const auto pm = solve_pressure_mode(grid_.k(m), dz, rhs, T(m, 0) + wzz0, T(m, nz - 1) + wzzH);
        for (int j = 0; j < nz; ++j) p(m, j) = pm[j];
    }
    return p;
}

VectorField StokesSolver::velocity(const SpectralField& T) const {
    const SpectralField w = solve_w(T);
    const SpectralField v = recover_v(w);
    return {to_physical(v), to_physical(w)};
}

namespace {

SpectralField laplacian(const SpectralField& f) {
    SpectralField untagged = f;
    untagged.parity = Parity::none;
    SpectralField out = d_dz(untagged, 2);
    for (int j = 0; j < f.grid.Nz; ++j)
        for (int m = 0; m < f.grid.nk(); ++m) out(m, j) -= f.grid.k(m) * f.grid.k(m) * f(m, j);
    return out;
}

}  // namespace

double divergence_max(const VectorField& u) {
    const SpectralField vh = to_spectral(u.v);
    const SpectralField wh = to_spectral(u.w);
    SpectralField div = dz_clamped(wh);
    const SpectralField dv = d_dy(vh, 1);
    for (std::size_t n = 0; n < div.data.size(); ++n) div.data[n] += dv.data[n];
    return to_physical(div).max_abs();
}

double stokes_residual(const VectorField& u, const PhysicalField& p, const PhysicalField& T) {
    const Grid& g = T.grid;
    const SpectralField vh = to_spectral(u.v);
    const SpectralField wh = to_spectral(u.w);
    PhysicalField pu = p;
    pu.parity = Parity::none;
    const SpectralField ph = to_spectral(pu);
    const PhysicalField lv = to_physical(laplacian(vh));
    const PhysicalField lw = to_physical(laplacian(wh));
    const PhysicalField py = to_physical(d_dy(ph, 1));
    const PhysicalField pz = d_dz(pu, 1);
    double r = 0.0;
    for (int j = 1; j < g.Nz - 1; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            r = std::max(r, std::abs(-lv(i, j) + py(i, j)));
            r = std::max(r, std::abs(-lw(i, j) + pz(i, j) - T(i, j)));
        }
    return std::max(r, divergence_max(u));
}

}  // namespace rbc
