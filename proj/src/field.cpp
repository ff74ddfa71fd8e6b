#include "rbc/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rbc/fd.hpp"

namespace rbc {

namespace fd {

std::vector<double> weights(double x0, std::span<const double> x, int m) {
    const int n = int(x.size());
    if (n <= m) throw std::invalid_argument("fd::weights: need more nodes than derivative order");
    // c[k][j]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c[m];
}

}  // namespace fd

double Grid::k(int m) const { return 2.0 * std::numbers::pi * m / Lambda; }

std::vector<double> Grid::wavenumbers() const {
    std::vector<double> ks(Nx);
    for (int n = 0; n < Nx; ++n) ks[n] = 2.0 * std::numbers::pi * (n - Nx / 2) / Lambda;
    return ks;
}

Grid make_grid(double H, double Lambda, int Nx, int Nz) {
    if (!(H > 0.0)) throw std::invalid_argument("make_grid: H must be positive");
    if (!(Lambda > 0.0)) throw std::invalid_argument("make_grid: Lambda must be positive");
    if (Nx < 8 || Nx % 2 != 0) throw std::invalid_argument("make_grid: Nx must be even and >= 8");
    if (Nz < 17 || Nz % 2 == 0) throw std::invalid_argument("make_grid: Nz must be odd and >= 17");
    Grid g;
    g.H = H;
    g.Lambda = Lambda;
    g.Nx = Nx;
    g.Nz = Nz;
    g.dz = H / (Nz - 1);
    g.fft = std::make_shared<const fft::RowFft>(Nx);
    return g;
}

double PhysicalField::max_abs() const {
    double m = 0.0;
    for (double v : data) m = std::max(m, std::abs(v));
    return m;
}

SpectralField to_spectral(const PhysicalField& f) {
    SpectralField out(f.grid, f.bc, f.parity);
    f.grid.fft->forward(f.data, out.data, f.grid.Nz);
    return out;
}

PhysicalField to_physical(const SpectralField& f) {
    PhysicalField out(f.grid, f.bc, f.parity);
    f.grid.fft->inverse(f.data, out.data, f.grid.Nz);
    return out;
}

void dealias(SpectralField& f) {
    const int nk = f.grid.nk();
    const int kc = f.grid.dealias_cutoff();
    for (int j = 0; j < f.grid.Nz; ++j)
        for (int m = kc + 1; m < nk; ++m) f(m, j) = 0.0;
}

SpectralField d_dy(const SpectralField& f, int order) {
    if (order < 1) throw std::invalid_argument("d_dy: order must be >= 1");
    SpectralField out = f;
    const int nk = f.grid.nk();
    const int nyq = f.grid.Nx / 2;
    for (int m = 0; m < nk; ++m) {
        const cplx ik(0.0, f.grid.k(m));
        const cplx factor = (m == nyq && order % 2 == 1) ? cplx{} : std::pow(ik, order);
        for (int j = 0; j < f.grid.Nz; ++j) out(m, j) *= factor;
    }
    out.bc = Boundary::free();
    return out;
}

PhysicalField d_dy(const PhysicalField& f, int order) {
    auto out = to_physical(d_dy(to_spectral(f), order));
    out.parity = f.parity;
    return out;
}

namespace {

struct StencilRow {
    int first = 0;  // index of the first node used
    std::vector<double> w;
};

// One-sided (wall) or centered stencils for second-order accuracy.
StencilRow make_stencil(int j, int nz, int order, bool use_ghosts) {
    const int half = (order <= 2) ? 1 : 2;
    StencilRow s;
    int first = j - half;
    int count = 2 * half + 1;
    if (!use_ghosts && (first < 0 || j + half > nz - 1)) {
        count = order + 2;
        first = (first < 0) ? 0 : nz - count;
    }
    s.first = first;
    std::vector<double> x(count);
    for (int p = 0; p < count; ++p) x[p] = first + p;
    s.w = fd::weights(double(j), x, order);
    return s;
}

int reflect(int j, int nz, double& sign, Parity parity) {
    const int period = 2 * (nz - 1);
    int jj = ((j % period) + period) % period;
    sign = 1.0;
    if (jj > nz - 1) {
        jj = period - jj;
        if (parity == Parity::odd) sign = -1.0;
    }
    return jj;
}

}  // namespace

template <class T>
std::vector<T> dz_rows(std::span<const T> f, int row, int nz, double dz, int order, Parity parity) {
    if (order < 1 || order > 4) throw std::invalid_argument("d_dz: order must be in 1..4");
    if (f.size() != std::size_t(row) * nz) throw std::invalid_argument("d_dz: size mismatch");
    const bool ghosts = parity != Parity::none;
    std::vector<T> out(f.size(), T{});
    const double scale = 1.0 / std::pow(dz, order);
    // Interior stencil is shared; wall stencils are rebuilt per row index.
    const StencilRow centered = make_stencil(order <= 2 ? 1 : 2, std::max(nz, 5), order, true);
    for (int j = 0; j < nz; ++j) {
        const int half = (order <= 2) ? 1 : 2;
        const bool interior = j - half >= 0 && j + half <= nz - 1;
        StencilRow st = interior ? StencilRow{j - half, centered.w} : make_stencil(j, nz, order, ghosts);
        T* o = out.data() + std::size_t(j) * row;
        for (std::size_t p = 0; p < st.w.size(); ++p) {
            const int src = st.first + int(p);
            double sign = 1.0;
            const int jj = ghosts ? reflect(src, nz, sign, parity) : src;
            const double wgt = st.w[p] * sign * scale;
            if (wgt == 0.0) continue;
            const T* in = f.data() + std::size_t(jj) * row;
            for (int i = 0; i < row; ++i) o[i] += wgt * in[i];
        }
    }
    return out;
}

template std::vector<double> dz_rows<double>(std::span<const double>, int, int, double, int, Parity);
template std::vector<cplx> dz_rows<cplx>(std::span<const cplx>, int, int, double, int, Parity);

namespace {
Parity derivative_parity(Parity p, int order) {
    if (p == Parity::none || order % 2 == 0) return p;
    return p == Parity::odd ? Parity::even : Parity::odd;
}
}  // namespace

PhysicalField d_dz(const PhysicalField& f, int order) {
    PhysicalField out(f.grid, Boundary::free(), derivative_parity(f.parity, order));
    out.data = dz_rows<double>(f.data, f.grid.Nx, f.grid.Nz, f.grid.dz, order, f.parity);
    return out;
}

SpectralField d_dz(const SpectralField& f, int order) {
    SpectralField out(f.grid, Boundary::free(), derivative_parity(f.parity, order));
    out.data = dz_rows<cplx>(f.data, f.grid.nk(), f.grid.Nz, f.grid.dz, order, f.parity);
    return out;
}

PhysicalField grad_alpha_magnitude(const PhysicalField& f, int alpha) {
    if (alpha < 1 || alpha > 4) throw std::invalid_argument("grad_alpha_magnitude: alpha must be in 1..4");
    const SpectralField fh = to_spectral(f);
    PhysicalField acc(f.grid);
    for (int m = 0; m <= alpha; ++m) {
        PhysicalField dy = m == 0 ? f : to_physical(d_dy(fh, m));
        dy.parity = f.parity;
        const PhysicalField mixed = (alpha - m) == 0 ? dy : d_dz(dy, alpha - m);
        double binom = 1.0;
        for (int q = 1; q <= m; ++q) binom = binom * (alpha - m + q) / q;
        for (std::size_t n = 0; n < acc.data.size(); ++n) acc.data[n] += binom * mixed.data[n] * mixed.data[n];
    }
    for (double& v : acc.data) v = std::sqrt(v);
    return acc;
}

SpectralField inv_grad_y(const SpectralField& f) {
    double scale = 0.0, mean = 0.0;
    for (int j = 0; j < f.grid.Nz; ++j) {
        mean = std::max(mean, std::abs(f(0, j)));
        for (int m = 0; m < f.grid.nk(); ++m) scale = std::max(scale, std::abs(f(m, j)));
    }
    if (mean > 1e-10 * std::max(scale, 1e-300) && mean > 0.0)
        throw std::invalid_argument("inv_grad_y: field has a non-vanishing horizontal mean");
    SpectralField out = f;
    for (int m = 0; m < f.grid.nk(); ++m) {
        const double kk = std::abs(f.grid.k(m));
        for (int j = 0; j < f.grid.Nz; ++j) out(m, j) = (m == 0) ? cplx{} : out(m, j) / kk;
    }
    return out;
}

PhysicalField inv_grad_y(const PhysicalField& f) {
    auto out = to_physical(inv_grad_y(to_spectral(f)));
    out.bc = f.bc;
    out.parity = f.parity;
    return out;
}

double extended_value(const PhysicalField& f, Parity parity, int i, int j) {
    const int nz = f.grid.Nz;
    if (parity == Parity::none) {
        if (j < 0 || j >= nz) throw std::out_of_range("extended_value: index outside [0, Nz) without parity");
        return f(i, j);
    }
    double sign = 1.0;
    const int jj = reflect(j, nz, sign, parity);
    return sign * f(i, jj);
}

PhysicalField odd_even_extend(const PhysicalField& f, Parity parity) {
    if (parity == Parity::odd) {
        const double tol = 1e-12 * std::max(1.0, f.max_abs());
        const int top = f.grid.Nz - 1;
        for (int i = 0; i < f.grid.Nx; ++i)
            if (std::abs(f(i, 0)) > tol || std::abs(f(i, top)) > tol)
                throw std::invalid_argument("odd_even_extend: odd parity needs zero wall values");
    }
    PhysicalField out = f;
    out.parity = parity;
    return out;
}

std::vector<double> horizontal_mean(const PhysicalField& f) {
    std::vector<double> out(f.grid.Nz, 0.0);
    for (int j = 0; j < f.grid.Nz; ++j) {
        double s = 0.0;
        for (double v : f.row(j)) s += v;
        out[j] = s / f.grid.Nx;
    }
    return out;
}

}  // namespace rbc
