#include "rbc/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rbc/cutoff.hpp"

namespace rbc {

using std::numbers::e;
using std::numbers::pi;

double lp_ramp(double q) {
    const double x = std::abs(q);
    return 1.0 - smoothstep((x - 1.0 / e) / (1.0 - 1.0 / e))[0];
}

double lp_band(double q, int ell) { return lp_ramp(std::exp(-ell - 1.0) * q) - lp_ramp(std::exp(-double(ell)) * q); }

double lp_low(double q, int ell_min) { return q == 0.0 ? 0.0 : lp_ramp(std::exp(-double(ell_min)) * q); }

const std::vector<double>& FilterBank::band(int ell) const {
    if (ell < ell_min || ell > ell_max) throw std::out_of_range("FilterBank: band index outside the bank");
    return bands[ell - ell_min];
}

double FilterBank::partition_defect() const {
    double worst = 0.0;
    for (std::size_t k = 1; k < lowpass.size(); ++k) {
        double s = lowpass[k];
        for (const auto& b : bands) s += b[k];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

namespace {

double qabs(const PeriodicGrid& g, int m, int n) { return std::hypot(g.qy(m), g.qz(n)); }

PeriodicField2D apply_spectral(const PeriodicField2D& f, const std::vector<double>& mult) {
    PeriodicSpectrum s = spectrum(f);
    if (mult.size() != s.data.size()) throw std::invalid_argument("multiplier size does not match the grid");
    for (std::size_t k = 0; k < s.data.size(); ++k) s.data[k] *= mult[k];
    return field(s);
}

}  // namespace

int default_ell_max(const PeriodicGrid& g) {
    const double qmax = std::hypot(g.qy(g.nx / 2), 2.0 * pi * (g.nz / 2) / g.Lz);
    return int(std::ceil(std::log(qmax)));
}

FilterBank build_bank(const PeriodicGrid& g, int ell_min, int ell_max) {
    if (ell_max < ell_min) throw std::invalid_argument("build_bank: empty band range");
    FilterBank b;
    b.grid = g;
    b.ell_min = ell_min;
    b.ell_max = ell_max;
    const int nc = g.ncols();
    b.lowpass.assign(g.spectral_size(), 0.0);
    b.bands.assign(ell_max - ell_min + 1, std::vector<double>(g.spectral_size(), 0.0));
    for (int n = 0; n < g.nz; ++n)
        for (int m = 0; m < nc; ++m) {
            const double q = qabs(g, m, n);
            const std::size_t k = std::size_t(n) * nc + m;
            b.lowpass[k] = lp_low(q, ell_min);
            for (int ell = ell_min; ell <= ell_max; ++ell) b.bands[ell - ell_min][k] = lp_band(q, ell);
        }
    return b;
}

PeriodicField2D project_band(const PeriodicField2D& f, const FilterBank& bank, int ell) {
    return apply_spectral(f, bank.band(ell));
}

PeriodicField2D project_lowpass(const PeriodicField2D& f, const FilterBank& bank) { return apply_spectral(f, bank.lowpass); }

double reconstruction_error(const PeriodicField2D& f, const FilterBank& bank) {
    PeriodicField2D sum = project_lowpass(f, bank);
    const double avg = mean(f);
    for (double& x : sum.data) x += avg;
    for (int ell = bank.ell_min; ell <= bank.ell_max; ++ell) sum = sum + project_band(f, bank, ell);
    const double scale = f.max_abs();
    return scale == 0.0 ? (sum - f).max_abs() : (sum - f).max_abs() / scale;
}

std::vector<std::pair<int, double>> band_energies(const PeriodicField2D& f, const FilterBank& bank) {
    std::vector<std::pair<int, double>> out;
    for (int ell = bank.ell_min; ell <= bank.ell_max; ++ell)
        out.emplace_back(ell, box_integral_pow(project_band(f, bank, ell), 2.0));
    return out;
}

double bernstein_ratio(const PeriodicField2D& band, int ell, int s, double p) {
    if (s < 1) throw std::invalid_argument("bernstein_ratio: s must be >= 1");
    if (!(p >= 1.0)) throw std::invalid_argument("bernstein_ratio: p must be >= 1");
    const double base = box_integral_pow(band, p);
    if (band.max_abs() == 0.0 || base == 0.0) throw std::invalid_argument("bernstein_ratio: zero band");
    return box_integral_pow(grad_magnitude(band, s), p) / (std::exp(p * s * ell) * base);
}

PeriodicField2D commutator_apply(const PeriodicField2D& uy, const PeriodicField2D& uz,
                                 const std::vector<double>& multiplier, const PeriodicField2D& zeta) {
    const PeriodicField2D zy = derivative(zeta, 1, 0), zz = derivative(zeta, 0, 1);
    const PeriodicField2D first = dealias(uy * apply_spectral(zy, multiplier) + uz * apply_spectral(zz, multiplier));
    const PeriodicField2D second = apply_spectral(dealias(uy * zy + uz * zz), multiplier);
    return first - second;
}

KernelMoments kernel_moments(int ell, double cell, int n) {
    if (cell <= 0.0) cell = 32.0 * pi * std::exp(-double(ell));
    const PeriodicGrid g = make_periodic_grid(cell, cell, n, n);
    PeriodicSpectrum s(g);
    const double area = cell * cell;
    for (int j = 0; j < g.nz; ++j)
        for (int m = 0; m < g.ncols(); ++m) s(m, j) = lp_band(qabs(g, m, j), ell) / area;
    const PeriodicField2D K = field(s);
    const PeriodicField2D Ky = derivative(K, 1, 0), Kz = derivative(K, 0, 1);
    const double h = cell / n, dA = h * h;
    KernelMoments km;
    double edge = 0.0;
    for (int j = 0; j < n; ++j) {
        const double z = (j <= n / 2 ? j : j - n) * h;
        for (int i = 0; i < n; ++i) {
            const double y = (i <= n / 2 ? i : i - n) * h;
            const double r = std::hypot(y, z);
            const double a = std::abs(K(i, j));
            km.l1 += a * dA;
            km.moment += a * r * dA;
            km.grad_moment += std::hypot(Ky(i, j), Kz(i, j)) * r * dA;
            if (std::max(std::abs(y), std::abs(z)) > 0.45 * cell) edge += a * dA;
        }
    }
    km.tail_mass = km.l1 > 0.0 ? edge / km.l1 : 0.0;
    return km;
}

std::string to_string(CommutatorBound which) {
    return which == CommutatorBound::zeta_moment ? "commutator_zeta_moment" : "commutator_grad_zeta_moment";
}

InequalityResult commutator_bound(const PeriodicField2D& uy, const PeriodicField2D& uz, const PeriodicField2D& zeta,
                                  const FilterBank& bank, int ell, double r, double p, CommutatorBound which,
                                  const KernelMoments& km) {
    if (!(r >= 1.0)) throw std::invalid_argument("commutator_bound: r must be >= 1");
    if (!(p > r)) throw std::invalid_argument("commutator_bound: need p > r");
    const PeriodicField2D c = commutator_apply(uy, uz, bank.band(ell), zeta);
    const double lhs = std::pow(box_integral_pow(c, r), 1.0 / r);
    PeriodicField2D gu(uy.grid);
    {
        const PeriodicField2D a = grad_magnitude(uy, 1), b = grad_magnitude(uz, 1);
        for (std::size_t k = 0; k < gu.data.size(); ++k) gu.data[k] = std::hypot(a.data[k], b.data[k]);
    }
    const double q = r * p / (p - r);
    const double unorm = std::pow(box_integral_pow(gu, p), 1.0 / p);
    double rhs = 0.0;
    if (which == CommutatorBound::zeta_moment)
        rhs = (km.grad_moment + km.l1) * std::pow(box_integral_pow(zeta, q), 1.0 / q) * unorm;
    else
        rhs = km.moment * std::pow(box_integral_pow(grad_magnitude(zeta, 1), q), 1.0 / q) * unorm;
    std::ostringstream wit;
    wit << "ell=" << ell << ", r=" << r << ", p=" << p << ", kernel tail mass=" << km.tail_mass;
    return measured_result(to_string(which), lhs, rhs, wit.str());
}

PeriodicGrid narrow_band_grid(double sigma) {
    if (!(sigma > 0.0) || sigma >= 1.0) throw std::invalid_argument("narrow_band_grid: sigma must be in (0, 1)");
    const double L = 8.0 * pi / sigma;
    const double need = 1.1 * (e + sigma) * L / pi;
    int n = 16;
    while (n < need) n *= 2;
    return make_periodic_grid(L, L, n, n, -0.5 * L);
}

InequalityResult narrow_band_residual(double q0y, double q0z, double sigma, const PeriodicField2D& zeta, double r) {
    const double q0 = std::hypot(q0y, q0z);
    if (!(q0 > 1.0 / e) || q0 > e) throw std::invalid_argument("narrow_band_residual: need 1/e < |q0| <= e");
    if (!(sigma > 0.0)) throw std::invalid_argument("narrow_band_residual: sigma must be positive");
    if (!(r >= 1.0)) throw std::invalid_argument("narrow_band_residual: r must be >= 1");
    const PeriodicGrid& g = zeta.grid;
    PeriodicSpectrum s = spectrum(zeta);
    double peak = 0.0;
    for (const cplx& c : s.data) peak = std::max(peak, std::abs(c));
    const double tol = 1e-10 * peak;
    for (int n = 0; n < g.nz; ++n)
        for (int m = 0; m < g.ncols(); ++m) {
            if (std::abs(s(m, n)) <= tol) continue;
            const double qy = g.qy(m), qz = g.qz(n);
            const bool inside = std::hypot(qy - q0y, qz - q0z) <= sigma * (1 + 1e-12) ||
                                std::hypot(qy + q0y, qz + q0z) <= sigma * (1 + 1e-12);
            if (!inside) throw std::invalid_argument("narrow_band_residual: spectral support outside B_sigma(+-q0)");
        }
    for (int n = 0; n < g.nz; ++n)
        for (int m = 0; m < g.ncols(); ++m) {
            const double q2 = g.qy(m) * g.qy(m) + g.qz(n) * g.qz(n);
            s(m, n) *= q2 - q0 * q0;
        }
    const double lhs = box_integral_pow(field(s), r);
    const double rhs = std::pow(sigma, r) * box_integral_pow(zeta, r);
    std::ostringstream wit;
    wit << "q0=(" << q0y << ", " << q0z << "), sigma=" << sigma << ", r=" << r;
    return measured_result("narrow_band", lhs, rhs, wit.str());
}

PeriodicField2D random_narrow_band(std::mt19937_64& rng, const PeriodicGrid& g, double q0y, double q0z, double sigma) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PeriodicSpectrum s(g);
    for (int n = 0; n < g.nz; ++n)
        for (int m = 0; m < g.ncols(); ++m) {
            const double qy = g.qy(m), qz = g.qz(n);
            // Only the half plane qy >= 0 is stored; its conjugates fill the other ball.
            if (std::hypot(qy - q0y, qz - q0z) < sigma || std::hypot(qy + q0y, qz + q0z) < sigma) {
                if (m == 0 || m == g.nx / 2) continue;
                s(m, n) = cplx(u(rng), u(rng));
            }
        }
    return field(s);
}

namespace {

struct Localized {
    PeriodicField2D zeta, f, v, w;
};

class Localizer {
public:
    Localizer(const Grid& g, double delta)
        : grid_(g), dg_(doubled_grid(g)), cut_(make_cutoff(g, delta)), delta_(delta) {
        for (auto* f : {&eta_, &eta1_, &eta2_}) *f = PeriodicField2D(dg_);
        for (int j = 0; j < dg_.nz; ++j) {
            const auto d = cut_.eval(dg_.z(j));
            for (int i = 0; i < dg_.nx; ++i) {
                eta_(i, j) = d[0];
                eta1_(i, j) = d[1];
                eta2_(i, j) = d[2];
            }
        }
    }

    Localized operator()(const SimState& s) const {
        if (s.grid.Nx != grid_.Nx || s.grid.Nz != grid_.Nz || s.grid.H != grid_.H)
            throw std::invalid_argument("snapshot grids differ");
        const PeriodicField2D th = extend_channel(s.theta, Parity::odd, dg_);
        const PeriodicField2D w = extend_channel(s.u.w, Parity::odd, dg_);
        const PeriodicField2D v = extend_channel(s.u.v, Parity::even, dg_);
        const PeriodicField2D thz = derivative(th, 0, 1);
        Localized out{eta_ * th, PeriodicField2D(dg_), v, w};
        const double invH = 1.0 / grid_.H;
        for (std::size_t k = 0; k < th.data.size(); ++k)
            out.f.data[k] = invH * eta_.data[k] * w.data[k] + eta1_.data[k] * w.data[k] * th.data[k] -
                            2.0 * eta1_.data[k] * thz.data[k] - eta2_.data[k] * th.data[k];
        return out;
    }

    const PeriodicGrid& grid() const { return dg_; }
    double delta() const { return delta_; }

private:
    Grid grid_;
    PeriodicGrid dg_;
    Cutoff cut_;
    double delta_;
    PeriodicField2D eta_, eta1_, eta2_;
};

PeriodicField2D grad_u_sq(const PeriodicField2D& v, const PeriodicField2D& w) {
    const PeriodicField2D a = grad_magnitude(v, 1), b = grad_magnitude(w, 1);
    PeriodicField2D out(v.grid);
    for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] = a.data[k] * a.data[k] + b.data[k] * b.data[k];
    return out;
}

void require_snapshots(const std::vector<SimState>& snaps, std::size_t min_snapshots) {
    if (snaps.empty() || snaps.size() < min_snapshots)
        throw std::invalid_argument("maximal-regularity check: insufficient snapshots (" + std::to_string(snaps.size()) +
                                    ")");
}

// zeta_i = d_i zeta, f_i = d_i f - d_i u . grad zeta for direction i (0 = y, 1 = z).
std::pair<PeriodicField2D, PeriodicField2D> differentiate(const PeriodicField2D& zeta, const PeriodicField2D& f,
                                                          const PeriodicField2D& v, const PeriodicField2D& w, int dir) {
    auto d = [dir](const PeriodicField2D& x) { return dir == 0 ? derivative(x, 1, 0) : derivative(x, 0, 1); };
    const PeriodicField2D zy = derivative(zeta, 1, 0), zz = derivative(zeta, 0, 1);
    return {d(zeta), d(f) - (d(v) * zy + d(w) * zz)};
}

}  // namespace

InequalityResult maxreg_l2_check(const std::vector<SimState>& snapshots, double delta, std::size_t min_snapshots) {
    require_snapshots(snapshots, min_snapshots);
    const Localizer loc(snapshots.front().grid, delta);
    double lhs = 0.0, f2 = 0.0, gu = 0.0, sup = 0.0;
    for (const SimState& s : snapshots) {
        const Localized l = loc(s);
        lhs += box_integral_pow(grad_magnitude(l.zeta, 2), 2.0);
        f2 += box_integral_pow(l.f, 2.0);
        gu += box_integral_pow(grad_u_sq(l.v, l.w), 1.0, 2.0 * delta);
        sup = std::max(sup, l.zeta.max_abs());
    }
    const double n = double(snapshots.size());
    lhs /= n;
    f2 /= n;
    gu /= n;
    std::ostringstream wit;
    wit << snapshots.size() << " snapshots, delta=" << delta << ", int f^2=" << f2 << ", sup|zeta|=" << sup
        << ", int grad u^2=" << gu;
    return measured_result("maxreg_l2", lhs, f2 + sup * gu, wit.str());
}

std::string to_string(MaxRegLevel level) { return level == MaxRegLevel::first ? "first" : "second"; }

MaxRegTerms maxreg_lr_terms(const std::vector<SimState>& snapshots, MaxRegLevel level, int M, int N, double delta,
                            std::size_t min_snapshots) {
    require_snapshots(snapshots, min_snapshots);
    if (M < 0 || N < 0) throw std::invalid_argument("maxreg_lr_terms: M and N must be >= 0");
    const double r = level == MaxRegLevel::first ? 4.0 / 3.0 : 1.0;
    const double width = 2.0 * delta;  // support half-width of zeta
    const Localizer loc(snapshots.front().grid, delta);

    // Per-component accumulators: lhs, |f|^r, |grad f|^r, zeta^2, |zeta|^{2r/(2-r)}, |grad zeta|^{4r/(4-r)}.
    const int ncomp = level == MaxRegLevel::first ? 2 : 3;
    std::vector<std::array<double, 6>> acc(ncomp, std::array<double, 6>{});
    double gu2 = 0.0, gu4 = 0.0;
    const double qz = 2.0 * r / (2.0 - r), qg = 4.0 * r / (4.0 - r);
    for (const SimState& s : snapshots) {
        const Localized l = loc(s);
        const PeriodicField2D g2 = grad_u_sq(l.v, l.w);
        gu2 += box_integral_pow(g2, 1.0, 2.0 * width);
        gu4 += box_integral_pow(g2, 2.0);
        std::vector<std::pair<PeriodicField2D, PeriodicField2D>> comps;
        if (level == MaxRegLevel::first) {
            comps.push_back(differentiate(l.zeta, l.f, l.v, l.w, 0));
            comps.push_back(differentiate(l.zeta, l.f, l.v, l.w, 1));
        } else {
            const auto cy = differentiate(l.zeta, l.f, l.v, l.w, 0);
            const auto cz = differentiate(l.zeta, l.f, l.v, l.w, 1);
            comps.push_back(differentiate(cy.first, cy.second, l.v, l.w, 0));
            comps.push_back(differentiate(cy.first, cy.second, l.v, l.w, 1));
            comps.push_back(differentiate(cz.first, cz.second, l.v, l.w, 1));
        }
        for (int c = 0; c < ncomp; ++c) {
            const auto& [z, f] = comps[c];
            acc[c][0] += box_integral_pow(grad_magnitude(z, 2), r);
            acc[c][1] += box_integral_pow(f, r);
            acc[c][2] += box_integral_pow(grad_magnitude(f, 1), r);
            acc[c][3] += box_integral_pow(z, 2.0);
            acc[c][4] += box_integral_pow(z, qz);
            acc[c][5] += box_integral_pow(grad_magnitude(z, 1), qg);
        }
    }
    const double n = double(snapshots.size());
    gu2 /= n;
    gu4 /= n;
    MaxRegTerms t;
    t.r = r;
    for (auto& a : acc) {
        for (double& x : a) x /= n;
        t.lhs += std::pow(a[0], 1.0 / r);
        t.terms[0] += M * std::pow(a[1], 1.0 / r);
        t.terms[1] += std::exp(-double(M)) * std::pow(a[2], 1.0 / r);
        t.terms[2] += std::pow(width, (2.0 - r) / (2.0 * r)) * std::sqrt(a[3]);
        t.terms[3] += N * std::sqrt(gu2) * std::pow(a[4], 1.0 / qz);
        t.terms[4] += std::exp(-double(N)) * std::pow(gu4, 0.25) * std::pow(a[5], 1.0 / qg);
    }
    return t;
}

InequalityResult maxreg_lr_check(const std::vector<SimState>& snapshots, MaxRegLevel level, int M, int N, double delta,
                                 std::size_t min_snapshots) {
    const MaxRegTerms t = maxreg_lr_terms(snapshots, level, M, N, delta, min_snapshots);
    std::ostringstream wit;
    wit << snapshots.size() << " snapshots, level=" << to_string(level) << ", r=" << t.r << ", M=" << M << ", N=" << N
        << ", delta=" << delta << ", terms=[";
    for (int k = 0; k < 5; ++k) wit << (k ? ", " : "") << t.terms[k];
    wit << "]";
    return measured_result("maxreg_lr_" + to_string(level), t.lhs, t.rhs(), wit.str());
}

}  // namespace rbc
