#include "rbc/inequality.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rbc/fft.hpp"

namespace rbc {

using std::numbers::pi;

double InequalityResult::ratio() const {
    if (lhs == 0.0 && rhs == 0.0) return 0.0;
    return lhs / rhs;
}

InequalityResult make_result(std::string name, double lhs, double rhs, double constant, std::string witness,
                             double rel_tol) {
    InequalityResult r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant_used = constant;
    r.witness = std::move(witness);
    const double bound = constant * rhs;
    r.pass = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= bound + rel_tol * std::max(std::abs(lhs), std::abs(bound));
    return r;
}

InequalityResult measured_result(std::string name, double lhs, double rhs, std::string witness) {
    InequalityResult r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.witness = std::move(witness);
    r.constant_used = r.ratio();
    r.pass = std::isfinite(r.constant_used);
    return r;
}

TestFunction1D make_test_function(std::function<Jet(double)> fn, double a, double b, std::string witness) {
    if (!(b > a)) throw std::invalid_argument("make_test_function: need a < b");
    TestFunction1D t;
    t.fn = std::move(fn);
    t.a = a;
    t.b = b;
    t.witness = std::move(witness);
    double sf = 0.0, sd = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const Jet j = t.fn(a + (b - a) * k / 200.0);
        sf = std::max(sf, std::abs(j.f));
        sd = std::max(sd, std::abs(j.d1));
    }
    const Jet ja = t.fn(a), jb = t.fn(b);
    t.zero_at_a = std::abs(ja.f) <= 1e-12 * sf;
    t.zero_at_b = std::abs(jb.f) <= 1e-12 * sf;
    t.flat_at_a = std::abs(ja.d1) <= 1e-12 * sd;
    t.flat_at_b = std::abs(jb.d1) <= 1e-12 * sd;
    return t;
}

TestFunction1D scaled(const TestFunction1D& f, double c) {
    TestFunction1D out = f;
    auto inner = f.fn;
    out.fn = [inner, c](double z) {
        Jet j = inner(z);
        return Jet{c * j.f, c * j.d1, c * j.d2};
    };
    return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels, double grading) {
    if (panels < 1) throw std::invalid_argument("integrate: panels must be >= 1");
    if (b == a) return 0.0;
    double sum = 0.0;
    double x0 = a;
    for (int k = 1; k <= panels; ++k) {
        const double x1 = a + (b - a) * std::pow(double(k) / panels, grading);
        sum += boost::math::quadrature::gauss<double, 20>::integrate(f, x0, x1);
        x0 = x1;
    }
    return sum;
}

InequalityResult check_hardy_standard(const TestFunction1D& phi, int panels) {
    if (!phi.zero_at_b || !phi.flat_at_b)
        throw std::invalid_argument("check_hardy_standard: need phi(H) = phi'(H) = 0");
    const double H = phi.b;
    const double lhs = integrate([&](double z) { const Jet j = phi(z); return z * j.d1 * j.d1; }, 0.0, H, panels);
    const double rhs = integrate([&](double z) { const Jet j = phi(z); return z * z * z * j.d2 * j.d2; }, 0.0, H, panels);
    return make_result("hardy_standard", lhs, rhs, 1.0, phi.witness);
}

InequalityResult check_hardy_critical(const TestFunction1D& phi, double delta, double H, int panels) {
    if (!(delta > 0.0) || !(delta < H)) throw std::invalid_argument("check_hardy_critical: need 0 < delta < H");
    if (std::abs(phi.a - delta) > 1e-12 * H || !phi.zero_at_a)
        throw std::invalid_argument("check_hardy_critical: need phi(delta) = 0");
    const double L = std::log(H / delta);
    // z = delta e^s turns both weights into ds.
    const double lhs = integrate([&](double s) { const double f = phi(delta * std::exp(s)).f; return f * f; }, 0.0, L, panels);
    const double grad = integrate(
        [&](double s) {
            const double z = delta * std::exp(s);
            const double d = z * phi(z).d1;
            return d * d;
        },
        0.0, L, panels);
    return make_result("hardy_critical", lhs, L * L * grad, 4.0, phi.witness);
}

InequalityResult check_hardy_weighted(const TestFunction1D& w, double delta, double alpha, int panels) {
    if (!(alpha > 1.0)) throw std::invalid_argument("check_hardy_weighted: alpha must exceed 1");
    const double H = w.b;
    if (!(delta > 0.0) || !(delta < H)) throw std::invalid_argument("check_hardy_weighted: need 0 < delta < H");
    if (w.a != 0.0 || !w.zero_at_a || !w.flat_at_a || !w.zero_at_b || !w.flat_at_b)
        throw std::invalid_argument("check_hardy_weighted: w_hat must be clamped at 0 and H");
    const double g = 3.0;
    const double bl_w = integrate([&](double z) { const double f = w(z).f; return f * f / std::pow(z, 5.0 - alpha); }, 0.0,
                                  delta, panels, g);
    const double bl_dw = integrate([&](double z) { const double d = w(z).d1; return d * d / std::pow(z, 3.0 - alpha); },
                                   0.0, delta, panels, g);
    const double bulk = integrate([&](double z) { const double d = w(z).d1; return d * d / (z * z * z); }, delta, H, panels);
    const double lhs = (alpha - 1.0) / std::pow(delta, alpha) * (bl_w + bl_dw) + bulk;
    auto phi_d1 = [&](double z) {
        const Jet j = w(z);
        return j.d1 / (z * z) - 2.0 * j.f / (z * z * z);
    };
    const double r1 = integrate([&](double z) { const double d = phi_d1(z); return z * d * d; }, 0.0, H, panels, g);
    const double r2 = integrate(
        [&](double z) {
            const double p = w(z).f / (z * z);
            return p * p / z;
        },
        delta, H, panels);
    std::ostringstream wit;
    wit << w.witness << ", delta=" << delta << ", alpha=" << alpha;
    return measured_result("hardy_weighted", lhs, r1 + r2, wit.str());
}

namespace {

// Spectral derivative of periodic samples on [0, b).
std::vector<double> periodic_derivative(const std::vector<double>& f, double b, int order) {
    const int n = int(f.size());
    fft::RowFft t(n);
    std::vector<cplx> c(t.modes());
    t.forward(f, c, 1);
    for (int m = 0; m < t.modes(); ++m) {
        cplx fac = 1.0;
        for (int k = 0; k < order; ++k) fac *= cplx(0.0, 2.0 * pi * m / b);
        if (order % 2 && m == n / 2) fac = 0.0;
        c[m] *= fac;
    }
    std::vector<double> out(n);
    t.inverse(c, out, 1);
    return out;
}

double sum_pow(const std::vector<double>& f, double p, double h) {
    double s = 0.0;
    for (double x : f) s += std::pow(std::abs(x), p);
    return s * h;
}

}  // namespace

InequalityResult check_ehrling(const std::vector<double>& zeta, double b) {
    if (zeta.size() < 4 || zeta.size() % 2) throw std::invalid_argument("check_ehrling: need an even number of samples >= 4");
    if (!(b > 0.0)) throw std::invalid_argument("check_ehrling: period must be positive");
    const double h = b / double(zeta.size());
    const auto d1 = periodic_derivative(zeta, b, 1);
    const auto d2 = periodic_derivative(zeta, b, 2);
    const double lhs = std::pow(sum_pow(d1, 4.0 / 3.0, h), 0.75);
    const double rhs = std::sqrt(sum_pow(zeta, 2.0, h)) + sum_pow(d2, 1.0, h);
    std::ostringstream wit;
    wit << "periodic samples n=" << zeta.size() << ", b=" << b;
    return measured_result("ehrling", lhs, rhs, wit.str());
}

InequalityResult check_interp_grad(const PeriodicField2D& zeta) {
    const double lhs = std::pow(box_integral_pow(grad_magnitude(zeta, 1), 4.0 / 3.0), 0.75);
    const double rhs =
        std::pow(box_integral_pow(zeta, 2.0), 0.25) * std::sqrt(box_integral_pow(grad_magnitude(zeta, 2), 1.0));
    std::ostringstream wit;
    wit << "periodic field " << zeta.grid.nx << "x" << zeta.grid.nz;
    return measured_result("interp_grad", lhs, rhs, wit.str());
}

std::string to_string(MaxPrincipleBound which) {
    return which == MaxPrincipleBound::fourth_power ? "interp_fourth_power" : "interp_second_derivative";
}

InequalityResult check_interp_max_principle(const PeriodicField2D& zeta, MaxPrincipleBound which) {
    // Node values can miss the peak of a band-limited field.
    const double sup = std::max(zeta.max_abs(), upsample(zeta, 4).max_abs());
    if (sup == 0.0) throw std::invalid_argument("check_interp_max_principle: zero field");
    double lhs = 0.0, rhs = 0.0;
    for (int dir = 0; dir < 2; ++dir) {
        auto d = [&](int k) { return dir == 0 ? derivative(zeta, k, 0) : derivative(zeta, 0, k); };
        if (which == MaxPrincipleBound::fourth_power) {
            lhs += box_integral_pow(d(1), 4.0);
            rhs += box_integral_pow(d(2), 2.0);
        } else {
            lhs += box_integral_pow(d(2), 2.0);
            rhs += box_integral_pow(d(3), 4.0 / 3.0);
        }
    }
    const bool fourth = which == MaxPrincipleBound::fourth_power;
    rhs *= fourth ? sup * sup : std::pow(sup, 2.0 / 3.0);
    const double constant = fourth ? 9.0 : std::cbrt(9.0);
    std::ostringstream wit;
    wit << "periodic field " << zeta.grid.nx << "x" << zeta.grid.nz << ", per-direction sum";
    return make_result(to_string(which), lhs, rhs, constant, wit.str());
}

namespace {

struct Fourier1D {
    double a0 = 0.0, L = 1.0, x0 = 0.0;
    std::vector<double> ca, sa;  // cos / sin coefficients for k = 1..modes

    Jet operator()(double x) const {
        Jet j{a0, 0.0, 0.0};
        for (std::size_t k = 1; k <= ca.size(); ++k) {
            const double q = 2.0 * pi * double(k) / L;
            const double c = std::cos(q * (x - x0)), s = std::sin(q * (x - x0));
            const double A = ca[k - 1], B = sa[k - 1];
            j.f += A * c + B * s;
            j.d1 += q * (-A * s + B * c);
            j.d2 += -q * q * (A * c + B * s);
        }
        return j;
    }
};

Fourier1D random_fourier(std::mt19937_64& rng, double x0, double L, int modes) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Fourier1D f;
    f.x0 = x0;
    f.L = L;
    f.a0 = u(rng);
    for (int k = 1; k <= modes; ++k) {
        f.ca.push_back(u(rng) / k);
        f.sa.push_back(u(rng) / k);
    }
    return f;
}

}  // namespace

TestFunction1D random_hardy_standard(std::mt19937_64& rng, double H, int modes) {
    const Fourier1D g = random_fourier(rng, 0.0, H, modes);
    const Jet gH = g(H);
    return make_test_function(
        [g, gH, H](double z) {
            const Jet j = g(z);
            return Jet{j.f - gH.f - gH.d1 * (z - H), j.d1 - gH.d1, j.d2};
        },
        0.0, H, "random Fourier series minus its tangent at H");
}

TestFunction1D random_hardy_critical(std::mt19937_64& rng, double delta, double H, int modes) {
    const Fourier1D g = random_fourier(rng, delta, H - delta, modes);
    const double gd = g(delta).f;
    return make_test_function(
        [g, gd](double z) {
            const Jet j = g(z);
            return Jet{j.f - gd, j.d1, j.d2};
        },
        delta, H, "random Fourier series minus its value at delta");
}

TestFunction1D random_clamped(std::mt19937_64& rng, double H, int modes) {
    const Fourier1D g = random_fourier(rng, 0.0, H, modes);
    return make_test_function(
        [g, H](double z) {
            const Jet j = g(z);
            // p = z^2 (H - z)^2
            const double p = z * z * (H - z) * (H - z);
            const double p1 = 2.0 * z * (H - z) * (H - 2.0 * z);
            const double p2 = 2.0 * H * H - 12.0 * H * z + 12.0 * z * z;
            return Jet{p * j.f, p1 * j.f + p * j.d1, p2 * j.f + 2.0 * p1 * j.d1 + p * j.d2};
        },
        0.0, H, "z^2 (H - z)^2 times a random Fourier series");
}

PeriodicField2D random_band_limited(std::mt19937_64& rng, const PeriodicGrid& g, int kmax) {
    if (kmax < 1 || kmax >= g.nx / 2 || kmax >= g.nz / 2) throw std::invalid_argument("random_band_limited: bad kmax");
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PeriodicSpectrum s(g);
    for (int m = 0; m <= kmax; ++m)
        for (int k = -kmax; k <= kmax; ++k) {
            if (m == 0 && k <= 0) continue;  // conjugate half of the m = 0 column
            const double amp = 1.0 / (1.0 + std::hypot(double(m), double(k)));
            const int n = k >= 0 ? k : g.nz + k;
            s(m, n) = amp * cplx(u(rng), u(rng));
        }
    // Hermitian completion of the m = 0 column.
    for (int k = 1; k <= kmax; ++k) s(0, g.nz - k) = std::conj(s(0, k));
    s(0, 0) = 0.2 * u(rng);
    return field(s);
}

std::vector<double> random_periodic_1d(std::mt19937_64& rng, int n, int kmax) {
    if (kmax < 1 || kmax >= n / 2) throw std::invalid_argument("random_periodic_1d: bad kmax");
    const Fourier1D g = random_fourier(rng, 0.0, 1.0, kmax);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = g(double(i) / n).f;
    return out;
}

TestFunction1D hardy_critical_member(const std::vector<double>& c, double delta, double H) {
    const double L = std::log(H / delta);
    // psi(s) = s + sum_n c_n s^{n+1} / L^n, phi(z) = psi(ln(z / delta)).
    auto psi = [c, L](double s) {
        double p = s, p1 = 1.0, p2 = 0.0;
        for (std::size_t n = 1; n <= c.size(); ++n) {
            const double scale = c[n - 1] / std::pow(L, double(n));
            p += scale * std::pow(s, double(n + 1));
            p1 += scale * double(n + 1) * std::pow(s, double(n));
            p2 += scale * double(n + 1) * double(n) * std::pow(s, double(n) - 1.0);
        }
        return Jet{p, p1, p2};
    };
    std::ostringstream wit;
    wit << "ln(z/delta) + polynomial in ln(z/delta), c = [";
    for (std::size_t n = 0; n < c.size(); ++n) wit << (n ? ", " : "") << c[n];
    wit << "]";
    return make_test_function(
        [psi, delta](double z) {
            const Jet p = psi(std::log(z / delta));
            return Jet{p.f, p.d1 / z, (p.d2 - p.d1) / (z * z)};
        },
        delta, H, wit.str());
}

TestFunction1D hardy_standard_member(double m, double H) {
    if (!(m > 1.0)) throw std::invalid_argument("hardy_standard_member: m must exceed 1");
    std::ostringstream wit;
    wit << "(1 - z/H)^" << m;
    return make_test_function(
        [m, H](double z) {
            const double x = std::max(0.0, 1.0 - z / H);
            return Jet{std::pow(x, m), -m / H * std::pow(x, m - 1.0), m * (m - 1.0) / (H * H) * std::pow(x, m - 2.0)};
        },
        0.0, H, wit.str());
}

SearchResult extremal_ratio_search(SearchFamily family, int budget, const SearchOptions& opt) {
    if (budget <= 0) throw std::invalid_argument("extremal_ratio_search: budget must be positive");
    SearchResult best;
    if (family == SearchFamily::zero) {
        const TestFunction1D zero = make_test_function([](double) { return Jet{}; }, 0.0, opt.H, "zero");
        best.best_ratio = check_hardy_standard(zero).ratio();
        best.witness = "zero";
        best.evaluations = 1;
        return best;
    }
    std::vector<double> lo, hi, start;
    std::function<InequalityResult(const std::vector<double>&)> eval;
    if (family == SearchFamily::hardy_critical) {
        lo.assign(3, -1.0);
        hi.assign(3, 1.0);
        start.assign(3, 0.0);
        eval = [&](const std::vector<double>& p) {
            return check_hardy_critical(hardy_critical_member(p, opt.delta, opt.H), opt.delta, opt.H);
        };
    } else {
        lo = {2.0};
        hi = {6.0};
        start = {2.0};
        eval = [&](const std::vector<double>& p) { return check_hardy_standard(hardy_standard_member(p[0], opt.H)); };
    }
    const std::size_t dim = lo.size();
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    best.best_ratio = -1.0;
    const int starts = 1 + std::max(0, opt.restarts);
    const int per_start = std::max(1, budget / starts);
    auto objective = [&](const std::vector<double>& p) {
        ++best.evaluations;
        const InequalityResult r = eval(p);
        const double v = r.ratio();
        if (v > best.best_ratio) {
            best.best_ratio = v;
            best.params = p;
            best.witness = r.witness;
        }
        return v;
    };
    for (int s = 0; s < starts && best.evaluations < budget; ++s) {
        std::vector<double> p = start;
        if (s > 0)
            for (std::size_t d = 0; d < dim; ++d) p[d] = lo[d] + (hi[d] - lo[d]) * u(rng);
        double val = objective(p);
        std::vector<double> step(dim);
        for (std::size_t d = 0; d < dim; ++d) step[d] = 0.25 * (hi[d] - lo[d]);
        const int stop = std::min(budget, best.evaluations + per_start);
        while (best.evaluations < stop && step[0] > 1e-6 * (hi[0] - lo[0])) {
            bool improved = false;
            for (std::size_t d = 0; d < dim && best.evaluations < stop; ++d)
                for (double sign : {1.0, -1.0}) {
                    if (best.evaluations >= stop) break;
                    std::vector<double> q = p;
                    q[d] = std::clamp(p[d] + sign * step[d], lo[d], hi[d]);
                    if (q[d] == p[d]) continue;
                    const double v = objective(q);
                    if (v > val) {
                        val = v;
                        p = q;
                        improved = true;
                        break;
                    }
                }
            if (!improved)
                for (double& st : step) st *= 0.5;
        }
    }
    return best;
}

}  // namespace rbc
