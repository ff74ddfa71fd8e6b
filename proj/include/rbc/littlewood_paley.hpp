#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "rbc/inequality.hpp"
#include "rbc/periodic.hpp"
#include "rbc/thermal.hpp"

namespace rbc {

/// Ramp g: 1 for |q| <= 1/e, 0 for |q| >= 1, smoothstep in between.
double lp_ramp(double q);
/// Band multiplier phi_ell(q) = g(e^{-ell-1}|q|) - g(e^{-ell}|q|), supported in
/// e^{ell-1} < |q| < e^{ell+1}.
double lp_band(double q, int ell);
/// Lowpass below ell_min: g(e^{-ell_min}|q|), applied to q != 0 only.
double lp_low(double q, int ell_min);

/// Multipliers sampled on the lattice of one periodic grid (spectral layout).
struct FilterBank {
    PeriodicGrid grid;
    int ell_min = 0, ell_max = 0;
    std::vector<std::vector<double>> bands;  // bands[ell - ell_min]
    std::vector<double> lowpass;

    const std::vector<double>& band(int ell) const;
    /// max over q != 0 of |lowpass + sum_ell band - 1|.
    double partition_defect() const;
};

/// Throws for an empty range.
FilterBank build_bank(const PeriodicGrid& g, int ell_min, int ell_max);
/// Smallest ell_max whose band still reaches the lattice corner.
int default_ell_max(const PeriodicGrid& g);

PeriodicField2D project_band(const PeriodicField2D& f, const FilterBank& bank, int ell);
PeriodicField2D project_lowpass(const PeriodicField2D& f, const FilterBank& bank);
/// max |<f> + lowpass + sum bands - f| / max |f|.
double reconstruction_error(const PeriodicField2D& f, const FilterBank& bank);
/// int <band_ell^2> dz for every ell in the bank.
std::vector<std::pair<int, double>> band_energies(const PeriodicField2D& f, const FilterBank& bank);

/// int <|grad^s f|^p> / (e^{p s ell} int <|f|^p>). Throws for a zero field.
double bernstein_ratio(const PeriodicField2D& band, int ell, int s, double p);

/// [u., phi*] grad zeta = u.(grad zeta * phi) - (u.grad zeta) * phi, with
/// dealiased products on both branches.
PeriodicField2D commutator_apply(const PeriodicField2D& uy, const PeriodicField2D& uz,
                                 const std::vector<double>& multiplier, const PeriodicField2D& zeta);

/// Whole-space moments of the band kernel phi_ell, approximated on a periodic
/// cell of side `cell` with n^2 points. cell <= 0 picks 32 pi e^{-ell}, which
/// keeps the tail mass below 1e-3.
struct KernelMoments {
    double l1 = 0.0;           // int |phi|
    double moment = 0.0;       // int |phi| |x|
    double grad_moment = 0.0;  // int |grad phi| |x|
    double tail_mass = 0.0;    // share of int |phi| within 5% of the cell boundary
};
KernelMoments kernel_moments(int ell, double cell = 0.0, int n = 1024);

/// Two commutator bounds:
///   zeta_moment:      (int|grad phi||x| + int|phi|) |zeta|_{rp/(p-r)} |grad u|_p
///   grad_zeta_moment: int|phi||x| |grad zeta|_{rp/(p-r)} |grad u|_p
enum class CommutatorBound { zeta_moment, grad_zeta_moment };
std::string to_string(CommutatorBound which);
/// Throws unless r >= 1 and p > r.
InequalityResult commutator_bound(const PeriodicField2D& uy, const PeriodicField2D& uz, const PeriodicField2D& zeta,
                                  const FilterBank& bank, int ell, double r, double p, CommutatorBound which,
                                  const KernelMoments& moments);

/// int <|-lap zeta - |q0|^2 zeta|^r> vs sigma^r int <|zeta|^r>. Throws when
/// e^{-1} < |q0| <= e fails or zeta has spectral content outside
/// B_sigma(q0) and B_sigma(-q0).
InequalityResult narrow_band_residual(double q0y, double q0z, double sigma, const PeriodicField2D& zeta, double r);
/// Grid whose lattice spacing is sigma/4 and which resolves |q| <= e + sigma.
PeriodicGrid narrow_band_grid(double sigma);
/// Random real field with coefficients on lattice points inside the two balls.
PeriodicField2D random_narrow_band(std::mt19937_64& rng, const PeriodicGrid& g, double q0y, double q0z, double sigma);

/// Localized maximal-regularity checks on a snapshot sequence. zeta = eta theta
/// with eta = make_cutoff(delta), so zeta is supported in |z| <= 2 delta; f is
/// the forcing of the localized equation. Fields are reflected to [-H, H).
///
/// L2 form: int <|grad^2 zeta|^2> vs int <f^2> + sup|zeta| int_{|z|<=2delta} <|grad u|^2>.
InequalityResult maxreg_l2_check(const std::vector<SimState>& snapshots, double delta, std::size_t min_snapshots = 1);

/// Lr form applied to first (r = 4/3) or second (r = 1) derivatives of
/// eta theta, summed over components. terms[0..4] are the five right-hand
/// side contributions weighted by M, e^{-M}, the support width, N, e^{-N}.
enum class MaxRegLevel { first, second };
struct MaxRegTerms {
    double r = 0.0;
    double lhs = 0.0;
    std::array<double, 5> terms{};
    double rhs() const { return terms[0] + terms[1] + terms[2] + terms[3] + terms[4]; }
};
MaxRegTerms maxreg_lr_terms(const std::vector<SimState>& snapshots, MaxRegLevel level, int M, int N, double delta,
                            std::size_t min_snapshots = 1);
InequalityResult maxreg_lr_check(const std::vector<SimState>& snapshots, MaxRegLevel level, int M, int N, double delta,
                                 std::size_t min_snapshots = 1);
std::string to_string(MaxRegLevel level);

}  // namespace rbc
