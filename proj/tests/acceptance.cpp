// One line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rbc/littlewood_paley.hpp"
#include "rbc/runner.hpp"
#include "rbc/stokes.hpp"
#include "rbc/suites.hpp"

using namespace rbc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(4);
    s << x;
    return s.str();
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

std::vector<InequalityResult> named(const std::vector<InequalityResult>& all, const std::string& name) {
    std::vector<InequalityResult> out;
    for (const auto& r : all)
        if (r.name == name) out.push_back(r);
    return out;
}

bool all_finite_ratios(const std::vector<InequalityResult>& rs) {
    return !rs.empty() && std::all_of(rs.begin(), rs.end(), [](const auto& r) { return std::isfinite(r.ratio()); });
}

bool all_pass_nonempty(const std::vector<InequalityResult>& rs) { return !rs.empty() && all_pass(rs); }

double max_ratio(const std::vector<InequalityResult>& rs) {
    double m = 0.0;
    for (const auto& r : rs) m = std::max(m, r.ratio());
    return m;
}

// Mode-1 temperature whose exact clamped solution is w = z^2 (H - z)^2.
SpectralField manufactured_T(const Grid& g) {
    const double H = g.H, k = g.k(1), k2 = k * k;
    SpectralField T(g);
    for (int j = 0; j < g.Nz; ++j) {
        const double z = g.z(j);
        const double w = z * z * (H - z) * (H - z);
        const double w2 = 2 * H * H - 12 * H * z + 12 * z * z;
        T(1, j) = (24.0 - 2 * k2 * w2 + k2 * k2 * w) / k2;
    }
    return T;
}

RunConfig reference_config(const fs::path& root, int Nz) {
    RunConfig c = parse_config(R"({"H": 20, "Nx": 128, "t_spin": 100, "t_avg": 50,
                                   "snapshot_stride": 500, "snapshot_count": 8})");
    c.Nz = Nz;
    c.out_dir = (root / ("reference_nz" + std::to_string(Nz))).string();
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "rbc_acceptance";
    fs::create_directories(root);
    int failures = 0;

    auto report = [&](int id, const std::string& title, const std::function<Outcome()>& body, double budget_s) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (budget_s > 0 && secs > budget_s) {
            o.pass = false;
            o.detail += "; over the " + fmt(budget_s) + " s budget";
        }
        if (!o.pass) ++failures;
        std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    };

    report(1, "conduction law H=5", [&] {
        RunConfig c = parse_config(R"({"H": 5, "Nx": 64, "Nz": 129, "t_spin": 50, "t_avg": 10})");
        c.out_dir = (root / "conduction_h5").string();
        const RunSummary r = run_simulation(c);
        const double nuh = r.nu_final_flux_z0 * c.H;
        return Outcome{std::abs(nuh - 1.0) <= 1e-4, "final Nu*H = " + fmt(nuh) + ", tol 1e-4"};
    }, 120);

    RunSummary ref;
    bool have_ref = false;
    report(2, "Nusselt identity consistency H=20", [&] {
        ref = run_simulation(reference_config(root, 257));
        have_ref = true;
        const double a = ref.nu_flux_z0, b = ref.nu_grad, c = ref.nu_diss;
        const double worst = std::max({rel_diff(a, b), rel_diff(a, c), rel_diff(b, c)});
        return Outcome{worst <= 0.02 && ref.nu_flux_rel_std <= 0.02,
                       "flux/grad/diss Nu*H = " + fmt(a * 20) + "/" + fmt(b * 20) + "/" + fmt(c * 20) +
                           ", max pairwise rel diff " + fmt(worst) + ", flux std over z " + fmt(ref.nu_flux_rel_std)};
    }, 600);

    report(3, "profile slope at the wall", [&] {
        if (!have_ref) return Outcome{false, "reference run missing"};
        const double slope_err = rel_diff(-ref.dzT_onesided_z0, ref.nu_flux_z0);
        const double scale = ref.nu_flux_z0 / ref.final_state.grid.dz;
        return Outcome{slope_err <= 0.03 && std::abs(ref.dzzT_z0) <= 0.05 * scale,
                       "one-sided slope rel err " + fmt(slope_err) + ", |<dzzT>(0)| = " + fmt(std::abs(ref.dzzT_z0)) +
                           " vs 5% of Nu/dz = " + fmt(0.05 * scale)};
    }, 0);

    report(4, "deviation law refinement", [&] {
        if (!have_ref) return Outcome{false, "reference run missing"};
        const RunSummary coarse = run_simulation(reference_config(root, 129));
        const double a = coarse.linearity_sup, b = ref.linearity_sup;
        const double change = std::abs(b - a) / a;
        return Outcome{std::isfinite(a) && std::isfinite(b) && change <= 0.2,
                       "sup ratio " + fmt(a) + " (Nz=129) -> " + fmt(b) + " (Nz=257), change " + fmt(change)};
    }, 0);

    report(5, "Stokes manufactured solution", [&] {
        const double H = 2.0;
        std::vector<double> err;
        double div = 0.0, mean_w = 0.0;
        for (int nz : {65, 129, 257}) {
            const Grid g = make_grid(H, 4.0, 16, nz);
            const StokesSolver s(g);
            const SpectralField T = manufactured_T(g);
            const SpectralField w = s.solve_w(T);
            double e = 0.0;
            for (int j = 0; j < nz; ++j) {
                const double z = g.z(j);
                e = std::max(e, std::abs(w(1, j) - z * z * (H - z) * (H - z)));
            }
            err.push_back(e);
            const VectorField u = s.velocity(T);
            div = std::max(div, divergence_max(u));
            for (double m : horizontal_mean(u.w)) mean_w = std::max(mean_w, std::abs(m));
        }
        const double o1 = std::log2(err[0] / err[1]), o2 = std::log2(err[1] / err[2]);
        const bool ok = std::abs(o1 - 2.0) <= 0.2 && std::abs(o2 - 2.0) <= 0.2 && div <= 1e-12 && mean_w <= 1e-12;
        return Outcome{ok, "orders " + fmt(o1) + ", " + fmt(o2) + ", max divergence " + fmt(div) + ", max |mean w| " +
                               fmt(mean_w)};
    }, 0);

    report(6, "Hardy suite", [&] {
        const auto rs = run_suite("hardy", 1);
        const auto std1 = named(rs, "hardy_standard"), crit = named(rs, "hardy_critical");
        const auto wit = named(rs, "hardy_critical_log_witness");
        double wit_err = 0.0;
        for (const auto& r : wit) wit_err = std::max(wit_err, std::abs(r.ratio() - 1.0 / 3.0));
        const bool ok = std1.size() >= 100 && all_pass(std1) && all_pass_nonempty(crit) &&
                        std::all_of(crit.begin(), crit.end(), [](const auto& r) { return r.constant_used == 4.0; }) &&
                        !wit.empty() && wit_err <= 1e-3;
        return Outcome{ok, std::to_string(std1.size()) + " standard (max ratio " + fmt(max_ratio(std1)) + "), " +
                               std::to_string(crit.size()) + " critical (max ratio " + fmt(max_ratio(crit)) +
                               "), log witness |ratio - 1/3| = " + fmt(wit_err)};
    }, 60);

    report(7, "interpolation suite", [&] {
        const auto rs = run_suite("interp", 1);
        const auto fourth = named(rs, "interp_fourth_power");
        const auto second = named(rs, "interp_second_derivative");
        const auto grad = named(rs, "interp_grad"), ehr = named(rs, "ehrling");
        std::vector<InequalityResult> refine;
        for (const auto& r : rs)
            if (r.name.size() > 11 && r.name.ends_with("_refinement")) refine.push_back(r);
        const bool ok = fourth.size() == 50 && all_pass(fourth) && all_finite_ratios(second) && all_finite_ratios(grad) &&
                        all_finite_ratios(ehr) && refine.size() >= 15 && all_pass(refine);
        double worst_refine = 0.0;
        for (const auto& r : refine) worst_refine = std::max(worst_refine, r.lhs / std::max(r.rhs * 100.0, 1e-300));
        return Outcome{ok, "fourth-power max ratio " + fmt(max_ratio(fourth)) + " (constant 9), max ratios ehrling " +
                               fmt(max_ratio(ehr)) + ", grad " + fmt(max_ratio(grad)) + ", second derivative " +
                               fmt(max_ratio(second)) + ", worst refinement change " + fmt(worst_refine)};
    }, 0);

    report(8, "Littlewood-Paley", [&] {
        const auto rs = run_suite("lp", 1);
        const auto rec = named(rs, "lp_reconstruction"), single = named(rs, "bernstein_single_mode");
        auto random = named(rs, "bernstein_upper");
        const auto lower = named(rs, "bernstein_lower");
        random.insert(random.end(), lower.begin(), lower.end());
        double single_err = 0.0;
        for (const auto& r : single) single_err = std::max(single_err, r.lhs);
        const bool ok = all_pass_nonempty(rec) && all_pass_nonempty(single) && all_pass_nonempty(random);
        return Outcome{ok, "reconstruction " + fmt(rec.empty() ? NAN : rec[0].lhs) + ", single-mode err " +
                               fmt(single_err) + ", " + std::to_string(random.size()) + " random Bernstein bounds"};
    }, 0);

    report(9, "narrow-band gap", [&] {
        const auto rs = run_suite("narrowband", 1);
        const auto two = named(rs, "narrow_band_two_mode"), stab = named(rs, "narrow_band_sigma_stability");
        const bool ok = all_pass_nonempty(two) && all_pass_nonempty(stab) && all_finite_ratios(named(rs, "narrow_band"));
        return Outcome{ok, "two-mode err " + fmt(two.empty() ? NAN : two[0].lhs) + " (tol " +
                               fmt(two.empty() ? NAN : two[0].rhs) + "), " + (stab.empty() ? "" : stab[0].witness)};
    }, 0);

    report(10, "commutator", [&] {
        const auto rs = run_suite("commutator", 1);
        const auto cu = named(rs, "commutator_constant_u"), sc = named(rs, "kernel_moment_scaling");
        const auto a = named(rs, "commutator_zeta_moment"), b = named(rs, "commutator_grad_zeta_moment");
        const bool ok = all_pass_nonempty(cu) && sc.size() == 5 && all_pass(sc) && a.size() == 50 && b.size() == 50 &&
                        all_finite_ratios(a) && all_finite_ratios(b);
        double worst_scale = 0.0;
        for (const auto& r : sc) worst_scale = std::max(worst_scale, r.lhs);
        return Outcome{ok, "constant-u " + fmt(cu.empty() ? NAN : cu[0].lhs) + ", moment scaling worst factor " +
                               fmt(worst_scale) + ", max ratios " + fmt(max_ratio(a)) + " / " + fmt(max_ratio(b))};
    }, 0);

    report(11, "maximal regularity on data", [&] {
        if (!have_ref) return Outcome{false, "reference run missing"};
        const auto& ineq = ref.analysis.inequalities;
        const bool finite = ineq.size() == 5 && all_finite_ratios(ineq);
        std::string detail = std::to_string(ref.snapshots.size()) + " snapshots, ratios";
        for (const auto& r : ineq) detail += " " + fmt(r.ratio());
        // Conduction: every localized quantity vanishes.
        const Grid g = make_grid(20.0, 40.0, 64, 129);
        const ThermalStepper st(g);
        const std::vector<SimState> cond(3, st.init_state("conduction", 0.0, 1));
        const auto l2 = maxreg_l2_check(cond, 2.5);
        bool zeros = l2.lhs == 0.0 && l2.rhs == 0.0;
        for (auto level : {MaxRegLevel::first, MaxRegLevel::second}) {
            const auto t = maxreg_lr_terms(cond, level, 12, 3, 2.5);
            zeros = zeros && t.lhs == 0.0 && t.rhs() == 0.0;
        }
        return Outcome{finite && zeros, detail + "; conduction zeros " + (zeros ? "exact" : "violated")};
    }, 0);

    report(12, "sweep trend over H", [&] {
        RunConfig base = parse_config(R"({"H": 20, "Nx": 64, "Nz": 129, "t_spin": 60, "t_avg": 30,
                                          "sample_stride": 10})");
        const fs::path out = root / "sweep_H";
        const SweepSummary s = run_sweep(base, "H", {20, 40, 80}, out);
        bool ok = s.rows.size() == 3 && fs::exists(out / "sweep.csv") && fs::exists(out / "slopes.csv");
        for (const auto& r : s.rows)
            ok = ok && std::isfinite(r.sobolev[0]) && std::isfinite(r.sobolev[1]) && std::isfinite(r.nu_flux);
        std::string detail;
        for (const auto& sl : s.slopes)
            if (sl.quantity == "sobolev_a1" || sl.quantity == "sobolev_a2" || sl.quantity == "Nu_flux") {
                ok = ok && std::isfinite(sl.slope_lnH);
                detail += sl.quantity + " slope vs ln H " + fmt(sl.slope_lnH) + "; ";
            }
        for (const auto& r : s.rows) detail += "H=" + fmt(r.param_value) + " Nu*H=" + fmt(r.nu_flux * r.param_value) + " ";
        return Outcome{ok, detail};
    }, 45 * 60);

    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
