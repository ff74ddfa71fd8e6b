#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "rbc/fft.hpp"
#include "rbc/field.hpp"

namespace rbc {

/// Doubly periodic box [0, Ly) x [z0, z0 + Lz) with nx columns (horizontal)
/// and nz rows (vertical). Channel fields live on Lz = 2H, z0 = -H.
struct PeriodicGrid {
    double Ly = 0.0, Lz = 0.0, z0 = 0.0;
    int nx = 0, nz = 0;
    std::shared_ptr<const fft::Fft2D> fft;

    int ncols() const { return nx / 2 + 1; }
    double y(int i) const { return i * Ly / nx; }
    double z(int j) const { return z0 + j * Lz / nz; }
    /// Wavenumber of spectral column m and row n (rows wrap to negative).
    double qy(int m) const;
    double qz(int n) const;
    std::size_t size() const { return std::size_t(nx) * nz; }
    std::size_t spectral_size() const { return std::size_t(ncols()) * nz; }
};

/// Throws unless the lengths are positive and nx, nz are even and >= 4.
PeriodicGrid make_periodic_grid(double Ly, double Lz, int nx, int nz, double z0 = 0.0);

/// Real samples, index j*nx + i.
struct PeriodicField2D {
    PeriodicGrid grid;
    std::vector<double> data;

    PeriodicField2D() = default;
    explicit PeriodicField2D(const PeriodicGrid& g) : grid(g), data(g.size(), 0.0) {}
    double& operator()(int i, int j) { return data[std::size_t(j) * grid.nx + i]; }
    double operator()(int i, int j) const { return data[std::size_t(j) * grid.nx + i]; }
    double max_abs() const;
};

/// Coefficients, nz rows by nx/2+1 columns, index n*(nx/2+1) + m.
struct PeriodicSpectrum {
    PeriodicGrid grid;
    std::vector<cplx> data;

    explicit PeriodicSpectrum(const PeriodicGrid& g) : grid(g), data(g.spectral_size(), cplx{}) {}
    cplx& operator()(int m, int n) { return data[std::size_t(n) * grid.ncols() + m]; }
    cplx operator()(int m, int n) const { return data[std::size_t(n) * grid.ncols() + m]; }
};

PeriodicSpectrum spectrum(const PeriodicField2D& f);
PeriodicField2D field(const PeriodicSpectrum& s);

/// Builds a field from f(y, z).
PeriodicField2D sample(const PeriodicGrid& g, const std::function<double(double, double)>& f);

/// Reflect a channel field to [-H, H) using its odd or even continuation.
PeriodicField2D extend_channel(const PhysicalField& f, Parity parity);
/// Same on a precomputed doubled_grid(f.grid).
PeriodicField2D extend_channel(const PhysicalField& f, Parity parity, const PeriodicGrid& doubled);
/// Periodic grid matching extend_channel for a channel grid.
PeriodicGrid doubled_grid(const Grid& g);

/// Spectral derivative d_y^ay d_z^az. Odd orders drop the Nyquist entries.
PeriodicField2D derivative(const PeriodicField2D& f, int ay, int az);
/// Pointwise |grad^s f| with binomial weights, as grad_alpha_magnitude.
PeriodicField2D grad_magnitude(const PeriodicField2D& f, int s);

/// Multiply coefficients by m(qy, qz). The multiplier must be even in q.
PeriodicField2D apply_multiplier(const PeriodicField2D& f, const std::function<double(double, double)>& m);
/// Zero coefficients beyond the 2/3 rule in either direction.
PeriodicField2D dealias(const PeriodicField2D& f);
/// Trigonometric interpolation onto a grid `factor` times finer in both
/// directions; Nyquist modes are dropped.
PeriodicField2D upsample(const PeriodicField2D& f, int factor);

/// Box integral of the horizontal mean, int <f> dz = Lz * mean(f).
double box_integral(const PeriodicField2D& f);
/// int <|f|^p> dz.
double box_integral_pow(const PeriodicField2D& f, double p);
/// Same with the vertical range restricted to |z| <= a.
double box_integral_pow(const PeriodicField2D& f, double p, double a);
double mean(const PeriodicField2D& f);

PeriodicField2D operator+(const PeriodicField2D& a, const PeriodicField2D& b);
PeriodicField2D operator-(const PeriodicField2D& a, const PeriodicField2D& b);
PeriodicField2D operator*(const PeriodicField2D& a, const PeriodicField2D& b);
PeriodicField2D operator*(double c, const PeriodicField2D& a);

}  // namespace rbc
