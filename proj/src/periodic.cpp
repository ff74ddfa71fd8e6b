#include "rbc/periodic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbc {

using std::numbers::pi;

double PeriodicGrid::qy(int m) const { return 2.0 * pi * m / Ly; }

double PeriodicGrid::qz(int n) const {
    const int k = n <= nz / 2 ? n : n - nz;
    return 2.0 * pi * k / Lz;
}

PeriodicGrid make_periodic_grid(double Ly, double Lz, int nx, int nz, double z0) {
    if (!(Ly > 0.0) || !(Lz > 0.0)) throw std::invalid_argument("make_periodic_grid: lengths must be positive");
    if (nx < 4 || nz < 4 || nx % 2 || nz % 2) throw std::invalid_argument("make_periodic_grid: sizes must be even and >= 4");
    PeriodicGrid g;
    g.Ly = Ly;
    g.Lz = Lz;
    g.z0 = z0;
    g.nx = nx;
    g.nz = nz;
    g.fft = std::make_shared<fft::Fft2D>(nz, nx);
    return g;
}

double PeriodicField2D::max_abs() const {
    double m = 0.0;
    for (double x : data) m = std::max(m, std::abs(x));
    return m;
}

PeriodicSpectrum spectrum(const PeriodicField2D& f) {
    PeriodicSpectrum s(f.grid);
    f.grid.fft->forward(f.data, s.data);
    return s;
}

PeriodicField2D field(const PeriodicSpectrum& s) {
    PeriodicField2D f(s.grid);
    s.grid.fft->inverse(s.data, f.data);
    return f;
}

PeriodicField2D sample(const PeriodicGrid& g, const std::function<double(double, double)>& fn) {
    PeriodicField2D f(g);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nx; ++i) f(i, j) = fn(g.y(i), g.z(j));
    return f;
}

PeriodicGrid doubled_grid(const Grid& g) { return make_periodic_grid(g.Lambda, 2.0 * g.H, g.Nx, 2 * (g.Nz - 1), -g.H); }

PeriodicField2D extend_channel(const PhysicalField& f, Parity parity) {
    return extend_channel(f, parity, doubled_grid(f.grid));
}

PeriodicField2D extend_channel(const PhysicalField& f, Parity parity, const PeriodicGrid& doubled) {
    if (parity == Parity::none) throw std::invalid_argument("extend_channel: parity must be odd or even");
    if (doubled.nx != f.grid.Nx || doubled.nz != 2 * (f.grid.Nz - 1))
        throw std::invalid_argument("extend_channel: grid mismatch");
    const PhysicalField src = odd_even_extend(f, parity);
    PeriodicField2D out(doubled);
    const int shift = f.grid.Nz - 1;
    for (int j = 0; j < out.grid.nz; ++j)
        for (int i = 0; i < out.grid.nx; ++i) out(i, j) = extended_value(src, parity, i, j - shift);
    return out;
}

namespace {

cplx ipow(double q, int a) {
    cplx r(1.0, 0.0);
    for (int k = 0; k < a; ++k) r *= cplx(0.0, q);
    return r;
}

}  // namespace

PeriodicField2D derivative(const PeriodicField2D& f, int ay, int az) {
    if (ay < 0 || az < 0) throw std::invalid_argument("derivative: negative order");
    if (ay == 0 && az == 0) return f;
    const PeriodicGrid& g = f.grid;
    PeriodicSpectrum s = spectrum(f);
    const int mny = g.nx / 2, mnz = g.nz / 2;
    for (int n = 0; n < g.nz; ++n)
        for (int m = 0; m < g.ncols(); ++m) {
            cplx fac = ipow(g.qy(m), ay) * ipow(g.qz(n), az);
            if ((ay % 2 && m == mny) || (az % 2 && n == mnz)) fac = 0.0;
            s(m, n) *= fac;
        }
    return field(s);
}

PeriodicField2D grad_magnitude(const PeriodicField2D& f, int order) {
    if (order < 1) throw std::invalid_argument("grad_magnitude: order must be >= 1");
    PeriodicField2D out(f.grid);
    double binom = 1.0;
    for (int m = 0; m <= order; ++m) {
        const PeriodicField2D d = derivative(f, m, order - m);
        for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] += binom * d.data[k] * d.data[k];
        binom = binom * (order - m) / (m + 1);
    }
    for (double& x : out.data) x = std::sqrt(x);
    return out;
}

PeriodicField2D apply_multiplier(const PeriodicField2D& f, const std::function<double(double, double)>& mult) {
    const PeriodicGrid& g = f.grid;
    PeriodicSpectrum s = spectrum(f);
    for (int n = 0; n < g.nz; ++n)
        for (int m = 0; m < g.ncols(); ++m) s(m, n) *= mult(g.qy(m), g.qz(n));
    return field(s);
}

PeriodicField2D upsample(const PeriodicField2D& f, int factor) {
    if (factor < 1) throw std::invalid_argument("upsample: factor must be >= 1");
    const PeriodicGrid& g = f.grid;
    const PeriodicGrid fg = make_periodic_grid(g.Ly, g.Lz, factor * g.nx, factor * g.nz, g.z0);
    const PeriodicSpectrum s = spectrum(f);
    PeriodicSpectrum out(fg);
    for (int n = 0; n < g.nz; ++n) {
        const int k = n <= g.nz / 2 ? n : n - g.nz;
        if (2 * std::abs(k) >= g.nz) continue;
        const int nf = k >= 0 ? k : fg.nz + k;
        for (int m = 0; m < g.ncols() - 1; ++m) out(m, nf) = s(m, n);
    }
    return field(out);
}

PeriodicField2D dealias(const PeriodicField2D& f) {
    const PeriodicGrid& g = f.grid;
    PeriodicSpectrum s = spectrum(f);
    const int cy = (g.nx - 1) / 3, cz = (g.nz - 1) / 3;
    for (int n = 0; n < g.nz; ++n) {
        const int kn = n <= g.nz / 2 ? n : g.nz - n;
        for (int m = 0; m < g.ncols(); ++m)
            if (m > cy || kn > cz) s(m, n) = 0.0;
    }
    return field(s);
}

double mean(const PeriodicField2D& f) {
    double s = 0.0;
    for (double x : f.data) s += x;
    return s / double(f.data.size());
}

double box_integral(const PeriodicField2D& f) { return f.grid.Lz * mean(f); }

double box_integral_pow(const PeriodicField2D& f, double p) {
    double s = 0.0;
    for (double x : f.data) s += std::pow(std::abs(x), p);
    return f.grid.Lz * s / double(f.data.size());
}

double box_integral_pow(const PeriodicField2D& f, double p, double a) {
    const PeriodicGrid& g = f.grid;
    double s = 0.0;
    for (int j = 0; j < g.nz; ++j) {
        if (std::abs(g.z(j)) > a * (1.0 + 1e-12)) continue;
        for (int i = 0; i < g.nx; ++i) s += std::pow(std::abs(f(i, j)), p);
    }
    return g.Lz * s / double(f.data.size());
}

namespace {

template <class Op>
PeriodicField2D combine(const PeriodicField2D& a, const PeriodicField2D& b, Op op) {
    if (a.data.size() != b.data.size()) throw std::invalid_argument("PeriodicField2D: size mismatch");
    PeriodicField2D out(a.grid);
    for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] = op(a.data[k], b.data[k]);
    return out;
}

}  // namespace

PeriodicField2D operator+(const PeriodicField2D& a, const PeriodicField2D& b) {
    return combine(a, b, [](double x, double y) { return x + y; });
}
PeriodicField2D operator-(const PeriodicField2D& a, const PeriodicField2D& b) {
    return combine(a, b, [](double x, double y) { return x - y; });
}
PeriodicField2D operator*(const PeriodicField2D& a, const PeriodicField2D& b) {
    return combine(a, b, [](double x, double y) { return x * y; });
}
PeriodicField2D operator*(double c, const PeriodicField2D& a) {
    PeriodicField2D out = a;
    for (double& x : out.data) x *= c;
    return out;
}

}  // namespace rbc
