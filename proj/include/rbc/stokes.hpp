#pragma once

#include <vector>

#include "rbc/banded.hpp"
#include "rbc/field.hpp"

namespace rbc {

/// Velocity u = (v, w) in physical space. v is even and w odd under the
/// reflection z -> -z.
struct VectorField {
    PhysicalField v;
    PhysicalField w;
};

/// z-derivative used for the velocity coupling: centered in the interior,
/// exactly zero at the walls. Keeps v = 0 at the walls and makes the
/// discrete divergence vanish identically.
SpectralField dz_clamped(const SpectralField& f);

/// Quasi-static Stokes solve on a fixed grid. Per-mode factorizations are
/// built once in the constructor and reused.
class StokesSolver {
public:
    explicit StokesSolver(const Grid& grid);

    const Grid& grid() const { return grid_; }

    /// Solves (D^4 - 2k^2 D^2 + k^4) w = k^2 T per mode with w = w' = 0 at the
    /// walls. The mean and Nyquist modes of w are zero.
    SpectralField solve_w(const SpectralField& T) const;
    /// v = (i/k) D_z w per mode, v = 0 for the mean mode.
    SpectralField recover_v(const SpectralField& w) const;
    /// Pressure from (D^2 - k^2) p = D_z T with dp/dz = T + d^2w/dz^2 at the
    /// walls; the mean mode has zero vertical average.
    SpectralField solve_pressure(const SpectralField& T) const;

    /// Both velocity components in physical space.
    VectorField velocity(const SpectralField& T) const;
    VectorField velocity(const PhysicalField& T) const { return velocity(to_spectral(T)); }

private:
    Grid grid_;
    std::vector<BandedLU> biharmonic_;  // index m, empty for m = 0
};

/// Solves (D^2 - k^2) p = rhs on all nodes with dp/dz = g_bottom at z = 0 and
/// g_top at z = H (ghost-node closure). For k = 0 the system is singular;
/// use the integral form in solve_pressure instead.
std::vector<cplx> solve_pressure_mode(double k, double dz, const std::vector<cplx>& rhs, cplx g_bottom, cplx g_top);

/// Max norm over interior nodes of -Lap u + grad p - T e_z and over all
/// nodes of div u, using the module's discrete operators.
double stokes_residual(const VectorField& u, const PhysicalField& p, const PhysicalField& T);

/// Max over nodes of |i k v + D_z w| (clamped D_z).
double divergence_max(const VectorField& u);

}  // namespace rbc
