#include "rbc/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rbc/littlewood_paley.hpp"

namespace rbc {

using std::numbers::pi;

namespace {

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

// Fixed-tolerance record: pass iff err <= tol.
InequalityResult tolerance_record(std::string name, double err, double tol, std::string witness) {
    return make_result(std::move(name), err, tol, 1.0, std::move(witness), 0.0);
}

std::vector<InequalityResult> hardy_suite(std::uint64_t seed) {
    std::vector<InequalityResult> out;
    std::mt19937_64 rng(seed);
    const double H = 10.0;
    for (int k = 0; k < 100; ++k) out.push_back(check_hardy_standard(random_hardy_standard(rng, H)));
    for (double delta : {1e-2, 1e-1, 1.0})
        for (int k = 0; k < 34; ++k) out.push_back(check_hardy_critical(random_hardy_critical(rng, delta, H), delta, H));
    for (double delta : {1e-2, 1e-1, 1.0}) {
        auto r = check_hardy_critical(hardy_critical_member({}, delta, H), delta, H);
        r.name = "hardy_critical_log_witness";
        out.push_back(r);
        out.push_back(tolerance_record("hardy_critical_sharpness", std::abs(r.ratio() - 1.0 / 3.0), 1e-3,
                                       "|ratio - 1/3| for the log witness, delta=" + fmt(delta)));
    }
    for (double alpha : {1.5, 2.0, 3.0})
        for (double frac : {0.125, 0.25})
            for (int k = 0; k < 5; ++k) out.push_back(check_hardy_weighted(random_clamped(rng, H), frac * H, alpha));
    for (double m = 2.0; m <= 6.0; m += 1.0) {
        const auto r = check_hardy_standard(hardy_standard_member(m, H));
        out.push_back(measured_result("hardy_standard_family", r.lhs, r.rhs, r.witness));
    }
    SearchOptions opt;
    opt.H = H;
    opt.seed = seed;
    const auto best = extremal_ratio_search(SearchFamily::hardy_critical, 200, opt);
    out.push_back(measured_result("hardy_critical_search", best.best_ratio, 1.0, best.witness));
    return out;
}

InequalityResult refinement_record(const std::string& name, double coarse, double fine) {
    return tolerance_record(name + "_refinement", std::abs(fine - coarse), 0.01 * std::abs(coarse),
                            "ratio " + fmt(coarse) + " -> " + fmt(fine) + " on grid doubling");
}

std::vector<InequalityResult> interp_suite(std::uint64_t seed) {
    std::vector<InequalityResult> out;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 50; ++k) {
        const std::uint64_t s = rng();
        std::mt19937_64 a(s), b(s);
        const auto coarse = check_ehrling(random_periodic_1d(a, 256, 8), 1.0);
        const auto fine = check_ehrling(random_periodic_1d(b, 512, 8), 1.0);
        out.push_back(coarse);
        if (k < 5) out.push_back(refinement_record("ehrling", coarse.ratio(), fine.ratio()));
    }
    const auto g = make_periodic_grid(4.0, 6.0, 64, 64, -3.0);
    for (int k = 0; k < 50; ++k) {
        const auto z = random_band_limited(rng, g, 6);
        out.push_back(check_interp_max_principle(z, MaxPrincipleBound::fourth_power));
        out.push_back(check_interp_max_principle(z, MaxPrincipleBound::second_derivative));
        out.push_back(check_interp_grad(z));
        if (k < 5) {
            const auto zf = upsample(z, 2);
            out.push_back(refinement_record("interp_grad", check_interp_grad(z).ratio(), check_interp_grad(zf).ratio()));
            for (auto which : {MaxPrincipleBound::fourth_power, MaxPrincipleBound::second_derivative})
                out.push_back(refinement_record(to_string(which), check_interp_max_principle(z, which).ratio(),
                                                check_interp_max_principle(zf, which).ratio()));
        }
    }
    return out;
}

PeriodicField2D random_field(std::mt19937_64& rng, const PeriodicGrid& g) {
    std::uniform_real_distribution<double> u(-1, 1);
    PeriodicField2D f(g);
    for (double& x : f.data) x = u(rng);
    return f;
}

std::vector<InequalityResult> lp_suite(std::uint64_t seed) {
    std::vector<InequalityResult> out;
    std::mt19937_64 rng(seed);
    {
        const auto g = make_periodic_grid(6.0, 4.0, 96, 64, -2.0);
        const auto bank = build_bank(g, -1, default_ell_max(g));
        out.push_back(tolerance_record("lp_partition", bank.partition_defect(), 1e-12, "max |sum of multipliers - 1|"));
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) worst = std::max(worst, reconstruction_error(random_field(rng, g), bank));
        out.push_back(tolerance_record("lp_reconstruction", worst, 1e-12, "max relative error over 10 random fields"));
    }
    for (int ell : {0, 1, 2}) {
        const int m = 3;
        const double Ly = 2 * pi * m * std::exp(-double(ell));
        const auto g = make_periodic_grid(Ly, 1.0, 32 * m, 8);
        const auto bank = build_bank(g, ell - 1, ell + 1);
        const auto f = sample(g, [&](double y, double) { return std::cos(2 * pi * m * y / Ly); });
        const auto b = project_band(f, bank, ell);
        for (int s : {1, 2})
            for (double p : {1.0, 4.0 / 3.0, 2.0})
                out.push_back(tolerance_record("bernstein_single_mode", std::abs(bernstein_ratio(b, ell, s, p) - 1.0), 1e-10,
                                               "|q|=e^ell, ell=" + std::to_string(ell) + ", s=" + std::to_string(s) +
                                                   ", p=" + fmt(p)));
    }
    const auto g = make_periodic_grid(4 * pi, 4 * pi, 128, 128);
    const auto bank = build_bank(g, -1, 3);
    for (int k = 0; k < 30; ++k) {
        const int ell = 1 + k % 3;
        const auto b = project_band(random_field(rng, g), bank, ell);
        for (int s : {1, 2})
            for (double p : {1.0, 4.0 / 3.0, 2.0}) {
                const double r = bernstein_ratio(b, ell, s, p);
                const std::string wit = "ell=" + std::to_string(ell) + ", s=" + std::to_string(s) + ", p=" + fmt(p);
                out.push_back(make_result("bernstein_upper", r, std::exp(2 * p * s), 1.0, wit));
                out.push_back(make_result("bernstein_lower", std::exp(-2 * p * s), r, 1.0, wit));
            }
    }
    return out;
}

std::vector<InequalityResult> commutator_suite(std::uint64_t seed) {
    std::vector<InequalityResult> out;
    std::mt19937_64 rng(seed);
    const auto g = make_periodic_grid(2 * pi, 2 * pi, 64, 64);
    const auto bank = build_bank(g, -1, default_ell_max(g));
    {
        const auto zeta = random_band_limited(rng, g, 12);
        PeriodicField2D uy(g), uz(g);
        for (double& x : uy.data) x = 1.7;
        for (double& x : uz.data) x = -0.4;
        const double scale = std::hypot(1.7, 0.4) * grad_magnitude(zeta, 1).max_abs();
        double worst = 0.0;
        for (int ell = bank.ell_min; ell <= bank.ell_max; ++ell)
            worst = std::max(worst, commutator_apply(uy, uz, bank.band(ell), zeta).max_abs() / scale);
        out.push_back(tolerance_record("commutator_constant_u", worst, 1e-12,
                                       "max |commutator| / (|u| max|grad zeta|) over all bands"));
    }
    std::vector<KernelMoments> km;
    for (int ell = 0; ell <= 4; ++ell) km.push_back(kernel_moments(ell));
    for (int ell = 0; ell <= 4; ++ell) {
        const double s = km[ell].moment * std::exp(double(ell)) / km[0].moment;
        out.push_back(tolerance_record("kernel_moment_scaling", std::max(s, 1.0 / s), 2.0,
                                       "moment_ell e^ell / moment_0 = " + fmt(s) + ", ell=" + std::to_string(ell)));
    }
    for (int k = 0; k < 50; ++k) {
        const int ell = k % 3;
        const auto psi = random_band_limited(rng, g, 8);
        const auto uy = derivative(psi, 0, 1), uz = -1.0 * derivative(psi, 1, 0);
        const auto zeta = random_band_limited(rng, g, 8);
        out.push_back(commutator_bound(uy, uz, zeta, bank, ell, 4.0 / 3.0, 2.0, CommutatorBound::zeta_moment, km[ell]));
        out.push_back(commutator_bound(uy, uz, zeta, bank, ell, 4.0 / 3.0, 4.0, CommutatorBound::grad_zeta_moment, km[ell]));
    }
    return out;
}

std::vector<InequalityResult> narrowband_suite(std::uint64_t seed) {
    std::vector<InequalityResult> out;
    {
        const double sigma = 0.1;
        const auto g = narrow_band_grid(sigma);
        const double dq = 2 * pi / g.Ly;
        const double q0y = 40 * dq, q0z = 20 * dq;
        const double a = 0.7, b = -1.3;
        const double q1y = q0y + 2 * dq, q1z = q0z, q2y = q0y, q2z = q0z - 3 * dq;
        const auto two = sample(g, [&](double y, double z) {
            return a * std::cos(q1y * y + q1z * z) + b * std::cos(q2y * y + q2z * z);
        });
        const double q02 = q0y * q0y + q0z * q0z;
        const double l1 = q1y * q1y + q1z * q1z - q02, l2 = q2y * q2y + q2z * q2z - q02;
        const double expect = (a * a * l1 * l1 + b * b * l2 * l2) / (sigma * sigma * (a * a + b * b));
        auto r = narrow_band_residual(q0y, q0z, sigma, two, 2.0);
        out.push_back(r);
        out.push_back(tolerance_record("narrow_band_two_mode", std::abs(r.ratio() - expect), 1e-10 * expect,
                                       "exact eigenvalue ratio " + fmt(expect)));
    }
    std::vector<double> maxima;
    for (double sigma : {0.05, 0.1, 0.2}) {
        const auto g = narrow_band_grid(sigma);
        std::mt19937_64 rng(seed);
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            const auto z = random_narrow_band(rng, g, 1.0, 0.5, sigma);
            const auto r = narrow_band_residual(1.0, 0.5, sigma, z, 2.0);
            worst = std::max(worst, r.ratio());
            out.push_back(r);
            out.push_back(narrow_band_residual(1.0, 0.5, sigma, z, 4.0 / 3.0));
        }
        maxima.push_back(worst);
    }
    const double ref = maxima[1];
    double spread = 0.0;
    for (double m : maxima) spread = std::max(spread, std::abs(m / ref - 1.0));
    out.push_back(tolerance_record("narrow_band_sigma_stability", spread, 0.5,
                                   "max ratios " + fmt(maxima[0]) + ", " + fmt(maxima[1]) + ", " + fmt(maxima[2]) +
                                       " for sigma 0.05, 0.1, 0.2"));
    return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"hardy", "interp", "lp", "commutator", "narrowband"};
    return names;
}

std::vector<InequalityResult> run_suite(const std::string& tag, std::uint64_t seed) {
    if (tag == "hardy") return hardy_suite(seed);
    if (tag == "interp") return interp_suite(seed);
    if (tag == "lp") return lp_suite(seed);
    if (tag == "commutator") return commutator_suite(seed);
    if (tag == "narrowband") return narrowband_suite(seed);
    throw std::invalid_argument("unknown suite '" + tag + "'");
}

bool all_pass(const std::vector<InequalityResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const InequalityResult& r) { return r.pass; });
}

std::string results_to_json(const std::vector<InequalityResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results)
        arr.push_back({{"name", r.name},
                       {"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"constant_used", r.constant_used},
                       {"pass", r.pass},
                       {"witness", r.witness}});
    return arr.dump(2);
}

}  // namespace rbc
