#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "rbc/fft.hpp"

namespace rbc {

using cplx = std::complex<double>;

/// Discretization of the periodic channel [0, Lambda) x [0, H].
///
/// Horizontal direction: Nx Fourier collocation points. Vertical direction:
/// Nz uniformly spaced nodes z_j = j dz including both walls.
struct Grid {
    double H = 0.0;
    double Lambda = 0.0;
    int Nx = 0;
    int Nz = 0;
    double dz = 0.0;
    std::shared_ptr<const fft::RowFft> fft;

    int nk() const { return Nx / 2 + 1; }
    double dy() const { return Lambda / Nx; }
    double y(int i) const { return i * dy(); }
    double z(int j) const { return j * dz; }
    /// Wavenumber of half-spectrum mode m (0 <= m <= Nx/2).
    double k(int m) const;
    /// Largest mode index kept by the 2/3 dealiasing rule.
    int dealias_cutoff() const { return (Nx - 1) / 3; }
    /// All horizontal wavenumbers (2 pi / Lambda) * {-Nx/2, ..., Nx/2 - 1}.
    std::vector<double> wavenumbers() const;
    std::size_t physical_size() const { return std::size_t(Nx) * Nz; }
    std::size_t spectral_size() const { return std::size_t(nk()) * Nz; }
};

/// Throws std::invalid_argument unless H, Lambda > 0, Nx >= 8 even, Nz >= 17 odd.
Grid make_grid(double H, double Lambda, int Nx, int Nz);

/// Symmetry used when a field is continued to z in [-H, H] with period 2H.
enum class Parity { none, odd, even };

/// Wall data carried by a field.
struct Boundary {
    enum class Kind { free, homogeneous, dirichlet };
    Kind kind = Kind::free;
    double bottom = 0.0;
    double top = 0.0;

    static Boundary free() { return {}; }
    static Boundary homogeneous() { return {Kind::homogeneous, 0.0, 0.0}; }
    static Boundary dirichlet(double a, double b) { return {Kind::dirichlet, a, b}; }
};

/// Real field on the collocation grid, stored row-major with index j*Nx + i.
struct PhysicalField {
    Grid grid;
    std::vector<double> data;
    Boundary bc{};
    Parity parity = Parity::none;

    PhysicalField() = default;
    explicit PhysicalField(const Grid& g, Boundary b = {}, Parity p = Parity::none)
        : grid(g), data(g.physical_size(), 0.0), bc(b), parity(p) {}

    double& operator()(int i, int j) { return data[std::size_t(j) * grid.Nx + i]; }
    double operator()(int i, int j) const { return data[std::size_t(j) * grid.Nx + i]; }
    std::span<const double> row(int j) const { return {data.data() + std::size_t(j) * grid.Nx, std::size_t(grid.Nx)}; }
    double max_abs() const;
};

/// Horizontal Fourier coefficients, (Nx/2+1) modes per height, index j*nk + m.
struct SpectralField {
    Grid grid;
    std::vector<cplx> data;
    Boundary bc{};
    Parity parity = Parity::none;

    SpectralField() = default;
    explicit SpectralField(const Grid& g, Boundary b = {}, Parity p = Parity::none)
        : grid(g), data(g.spectral_size(), cplx{}), bc(b), parity(p) {}

    cplx& operator()(int m, int j) { return data[std::size_t(j) * grid.nk() + m]; }
    cplx operator()(int m, int j) const { return data[std::size_t(j) * grid.nk() + m]; }
};

SpectralField to_spectral(const PhysicalField& f);
PhysicalField to_physical(const SpectralField& f);

/// Zero every mode above the 2/3-rule cutoff, including Nyquist.
void dealias(SpectralField& f);

/// Multiply coefficients by (ik)^order. Odd orders zero the Nyquist mode.
SpectralField d_dy(const SpectralField& f, int order);
PhysicalField d_dy(const PhysicalField& f, int order);

/// Second-order finite-difference z-derivative of order 1..4 applied to
/// rows of length `row` (nz rows). Centered in the interior; one-sided at
/// the walls unless `parity` supplies ghost values from the reflected,
/// 2H-periodic continuation.
template <class T>
std::vector<T> dz_rows(std::span<const T> f, int row, int nz, double dz, int order, Parity parity);

PhysicalField d_dz(const PhysicalField& f, int order);
SpectralField d_dz(const SpectralField& f, int order);

/// Pointwise |nabla^alpha f| with |nabla^alpha f|^2 = sum_m C(alpha,m) (d_y^m d_z^{alpha-m} f)^2.
PhysicalField grad_alpha_magnitude(const PhysicalField& f, int alpha);

/// Divide horizontal coefficients by |k|. Requires a vanishing horizontal
/// mean at every height (relative tolerance 1e-10 of max|f|).
SpectralField inv_grad_y(const SpectralField& f);
PhysicalField inv_grad_y(const PhysicalField& f);

/// Value of f at vertical index j (any integer) under the 2H-periodic
/// continuation with the given parity. Throws for Parity::none outside
/// [0, Nz-1].
double extended_value(const PhysicalField& f, Parity parity, int i, int j);

/// Checks that the field admits the requested continuation (odd needs zero
/// wall values) and returns the field retagged with that parity.
PhysicalField odd_even_extend(const PhysicalField& f, Parity parity);

/// Horizontal average of each row.
std::vector<double> horizontal_mean(const PhysicalField& f);

}  // namespace rbc
