#include "rbc/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rbc/checkpoint.hpp"
#include "rbc/littlewood_paley.hpp"
#include "rbc/periodic.hpp"
#include "rbc/stokes.hpp"
#include "rbc/suites.hpp"

namespace rbc {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::set<std::string>& config_keys() {
    static const std::set<std::string> keys{
        "H",          "Lambda",        "Nx",          "Nz",           "cfl",           "dt_max",
        "t_spin",     "t_avg",         "init_kind",   "init_amplitude", "seed",        "out_dir",
        "diagnostics", "sample_stride", "series_stride", "snapshot_stride", "snapshot_count", "bl_delta",
        "weight_alpha", "weight_delta", "maxreg_delta"};
    return keys;
}

ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    j["H"] = c.H;
    j["Lambda"] = c.Lambda;
    j["Nx"] = c.Nx;
    j["Nz"] = c.Nz;
    j["cfl"] = c.cfl;
    j["dt_max"] = c.dt_max;
    j["t_spin"] = c.t_spin;
    j["t_avg"] = c.t_avg;
    j["init_kind"] = c.init_kind;
    j["init_amplitude"] = c.init_amplitude;
    j["seed"] = c.seed;
    j["out_dir"] = c.out_dir;
    j["diagnostics"] = c.diagnostics;
    j["sample_stride"] = c.sample_stride;
    j["series_stride"] = c.series_stride;
    j["snapshot_stride"] = c.snapshot_stride;
    j["snapshot_count"] = c.snapshot_count;
    j["bl_delta"] = c.bl_delta;
    j["weight_alpha"] = c.weight_alpha;
    j["weight_delta"] = c.weight_delta;
    j["maxreg_delta"] = c.maxreg_delta;
    return j;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_text(const fs::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + file.string());
}

ordered_json functional_json(const FunctionalReport& r) {
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : r.params) p[k] = v;
    return {{"name", r.name}, {"value", r.value}, {"params", p}, {"comparator", r.comparator}, {"ratio", r.ratio}};
}

ordered_json inequality_json(const InequalityResult& r) {
    return {{"name", r.name},       {"lhs", r.lhs},   {"rhs", r.rhs},
            {"constant_used", r.constant_used}, {"pass", r.pass}, {"witness", r.witness}};
}

ordered_json analysis_json(const Analysis& a) {
    ordered_json f = ordered_json::array(), q = ordered_json::array();
    for (const auto& r : a.functionals) f.push_back(functional_json(r));
    for (const auto& r : a.inequalities) q.push_back(inequality_json(r));
    return {{"functionals", f}, {"inequalities", q}};
}

double flux_rel_std(const TimeAverager& avg) {
    const auto wT = avg.mean("wT"), dzT = avg.mean("dzT");
    double mean = 0.0;
    for (std::size_t j = 0; j < wT.size(); ++j) mean += wT[j] - dzT[j];
    mean /= double(wT.size());
    double var = 0.0;
    for (std::size_t j = 0; j < wT.size(); ++j) var += std::pow(wT[j] - dzT[j] - mean, 2);
    var /= double(wT.size());
    return mean != 0.0 ? std::sqrt(var) / std::abs(mean) : 0.0;
}

std::string member_name(const std::string& param, double value) {
    std::ostringstream s;
    s << param << "_" << value;
    return s.str();
}

}  // namespace

Grid RunConfig::grid() const { return make_grid(H, Lambda, Nx, Nz); }

void RunConfig::validate() const {
    grid();
    if (Nx < 8 || (Nx & (Nx - 1)) != 0) throw std::invalid_argument("config: Nx must be a power of two >= 8");
    if (Nz < 17) throw std::invalid_argument("config: Nz must be >= 17");
    if (!(t_avg > 0.0)) throw std::invalid_argument("config: t_avg must be positive");
    if (!(t_spin >= 0.0)) throw std::invalid_argument("config: t_spin must be non-negative");
    if (!std::isfinite(init_amplitude) || init_amplitude < 0.0)
        throw std::invalid_argument("config: init_amplitude must be finite and non-negative");
    if (!(cfl > 0.0) || cfl > 1.0) throw std::invalid_argument("config: cfl must be in (0, 1]");
    if (!(dt_max > 0.0)) throw std::invalid_argument("config: dt_max must be positive");
    if (init_kind != "conduction" && init_kind != "perturbed")
        throw std::invalid_argument("config: init_kind must be conduction or perturbed");
    if (sample_stride < 1 || series_stride < 1) throw std::invalid_argument("config: strides must be >= 1");
    if (snapshot_stride < 0 || snapshot_count < 1) throw std::invalid_argument("config: invalid snapshot settings");
    if (!(bl_delta > 0.0) || bl_delta > H) throw std::invalid_argument("config: bl_delta must be in (0, H]");
    if (!(weight_alpha > 1.0)) throw std::invalid_argument("config: weight_alpha must exceed 1");
    if (!(weight_delta > 0.0) || weight_delta >= H) throw std::invalid_argument("config: weight_delta must be in (0, H)");
    if (!(maxreg_delta > 0.0) || 2.0 * maxreg_delta >= H)
        throw std::invalid_argument("config: maxreg_delta must be in (0, H/2)");
    TimeAverager probe(grid());
    probe.register_defaults();
    for (const auto& d : diagnostics)
        if (!probe.has(d)) probe.register_observable(d);
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    for (const auto& [k, v] : j.items())
        if (!config_keys().count(k)) throw std::invalid_argument("config: unknown key '" + k + "'");
    RunConfig c;
    try {
        auto get = [&](const char* key, auto& dst) {
            if (j.contains(key)) dst = j.at(key).get<std::decay_t<decltype(dst)>>();
        };
        get("H", c.H);
        c.Lambda = 2.0 * c.H;
        c.weight_delta = c.H / 4.0;
        c.maxreg_delta = c.H / 8.0;
        get("Lambda", c.Lambda);
        get("Nx", c.Nx);
        get("Nz", c.Nz);
        get("cfl", c.cfl);
        get("dt_max", c.dt_max);
        get("t_spin", c.t_spin);
        get("t_avg", c.t_avg);
        get("init_kind", c.init_kind);
        get("init_amplitude", c.init_amplitude);
        get("seed", c.seed);
        get("out_dir", c.out_dir);
        get("diagnostics", c.diagnostics);
        get("sample_stride", c.sample_stride);
        get("series_stride", c.series_stride);
        get("snapshot_stride", c.snapshot_stride);
        get("snapshot_count", c.snapshot_count);
        get("bl_delta", c.bl_delta);
        get("weight_alpha", c.weight_alpha);
        get("weight_delta", c.weight_delta);
        get("maxreg_delta", c.maxreg_delta);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: wrong value type: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read config " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const RunConfig& cfg) { return config_json(cfg).dump(2); }

Analysis analyze(const TimeAverager& avg, const SimState& last, const std::vector<SimState>& snapshots,
                 const AnalysisOptions& opt) {
    const Grid& g = avg.grid();
    const double wdelta = opt.weight_delta > 0.0 ? opt.weight_delta : g.H / 4.0;
    const double mdelta = opt.maxreg_delta > 0.0 ? opt.maxreg_delta : g.H / 8.0;
    Analysis a;
    const double nu = nusselt_flux(avg, 0.0);
    a.functionals.push_back(make_report("nusselt_flux_z0", nu, 1.0 / g.H));
    a.functionals.push_back(make_report("nusselt_gradient", nusselt_gradient(avg), 1.0 / g.H));
    a.functionals.push_back(make_report("nusselt_dissipation", nusselt_dissipation(avg), 1.0 / g.H));
    for (int alpha = 1; alpha <= 4; ++alpha)
        a.functionals.push_back(make_report("sobolev_a" + std::to_string(alpha), sobolev_bl_functional(avg, alpha, 1.0),
                                            1.0, {{"alpha", alpha}, {"z_top", 1.0}}));
    a.functionals.push_back(make_report("linearity_sup", linearity_deviation(avg, nu).sup, 1.0));
    for (auto&& r : velocity_bl_functionals(avg, std::min(opt.bl_delta, g.H))) a.functionals.push_back(r);
    for (auto&& r : weighted_velocity_functionals(avg, wdelta, opt.weight_alpha)) a.functionals.push_back(r);
    for (double q : {2.0, 4.0})
        for (auto&& r : u_global_norms(avg, q)) a.functionals.push_back(r);

    if (!snapshots.empty()) {
        a.inequalities.push_back(maxreg_l2_check(snapshots, mdelta));
        const int big_m = int(std::ceil(4.0 * std::log(g.H))), big_n = int(std::ceil(std::log(g.H)));
        for (auto level : {MaxRegLevel::first, MaxRegLevel::second})
            for (auto [M, N] : {std::pair{1, 1}, std::pair{big_m, big_n}})
                a.inequalities.push_back(maxreg_lr_check(snapshots, level, M, N, mdelta));
    }

    const PeriodicGrid dg = doubled_grid(g);
    const PeriodicField2D th = extend_channel(last.theta, Parity::odd, dg);
    const int ell_min = int(std::floor(std::log(2.0 * std::numbers::pi / std::max(dg.Ly, dg.Lz))));
    a.bands = band_energies(th, build_bank(dg, ell_min, default_ell_max(dg)));
    return a;
}

void check_finite(const SimState& s) {
    if (all_finite(s)) return;
    std::ostringstream msg;
    msg << "non-finite field at step " << s.step << ", t = " << s.t;
    throw std::runtime_error(msg.str());
}

RunSummary run_simulation(const RunConfig& cfg, bool write_outputs) {
    cfg.validate();
    const Grid g = cfg.grid();
    const ThermalStepper stepper(g);
    TimeAverager avg(g, cfg.t_spin, cfg.t_avg);
    avg.register_defaults();
    for (const auto& d : cfg.diagnostics)
        if (!avg.has(d)) avg.register_observable(d);

    const fs::path out(cfg.out_dir);
    if (write_outputs) fs::create_directories(out);
    std::ostringstream series;
    series << "step,t,Nu_flux_z0,Nu_flux_mid,Nu_grad,Nu_diss,Tmin,Tmax,div_max\n";

    RunSummary sum;
    SimState s = stepper.init_state(cfg.init_kind, cfg.init_amplitude, cfg.seed);
    sum.max_principle = max_principle_monitor(s);
    std::deque<SimState> ring;
    const double t_end = cfg.t_spin + cfg.t_avg;
    auto record = [&](const SimState& st) {
        const NusseltSnapshot n = nusselt_snapshot(st);
        const MaxPrinciple mp = max_principle_monitor(st);
        const double div = divergence_max(st.u);
        sum.div_max = std::max(sum.div_max, div);
        series << st.step << ',' << num(st.t) << ',' << num(n.flux_z0) << ',' << num(n.flux_mid) << ',' << num(n.grad)
               << ',' << num(n.diss) << ',' << num(mp.t_min) << ',' << num(mp.t_max) << ',' << num(div) << '\n';
    };
    record(s);
    while (s.t < t_end - 1e-12 * t_end) {
        const double dt = std::min(cfl_dt(s, cfg.cfl, cfg.dt_max), t_end - s.t);
        s = stepper.step(s, dt);
        check_finite(s);
        const MaxPrinciple mp = max_principle_monitor(s);
        sum.max_principle.t_min = std::min(sum.max_principle.t_min, mp.t_min);
        sum.max_principle.t_max = std::max(sum.max_principle.t_max, mp.t_max);
        sum.max_principle.violation = std::max(sum.max_principle.violation, mp.violation);
        const bool last = s.t >= t_end - 1e-12 * t_end;
        if (s.step % cfg.sample_stride == 0 || last) avg.add_sample(s);
        if (s.step % cfg.series_stride == 0 || last) record(s);
        if (cfg.snapshot_stride > 0 && s.t >= cfg.t_spin && (s.step % cfg.snapshot_stride == 0 || last)) {
            ring.push_back(s);
            if (int(ring.size()) > cfg.snapshot_count) ring.pop_front();
        }
    }
    if (avg.samples() == 0) throw std::runtime_error("averaging window collected no samples");

    sum.final_state = s;
    sum.steps = s.step;
    sum.samples = avg.samples();
    sum.snapshots.assign(ring.begin(), ring.end());
    sum.nu_flux_z0 = nusselt_flux(avg, 0.0);
    sum.nu_flux_mid = nusselt_flux(avg, 0.5 * g.H);
    sum.nu_grad = nusselt_gradient(avg);
    sum.nu_diss = nusselt_dissipation(avg);
    sum.nu_flux_rel_std = flux_rel_std(avg);
    sum.nu_final_flux_z0 = nusselt_snapshot(s).flux_z0;
    const auto T = avg.mean("T");
    sum.dzT_onesided_z0 = (-3.0 * T[0] + 4.0 * T[1] - T[2]) / (2.0 * g.dz);
    sum.dzzT_z0 = avg.mean("dzzT")[0];
    sum.linearity_sup = linearity_deviation(avg, sum.nu_flux_z0).sup;
    for (int a = 1; a <= 4; ++a) sum.sobolev[a - 1] = sobolev_bl_functional(avg, a, 1.0);
    AnalysisOptions opt{cfg.bl_delta, cfg.weight_alpha, cfg.weight_delta, cfg.maxreg_delta};
    sum.analysis = analyze(avg, s, sum.snapshots, opt);

    ordered_json rep;
    rep["config"] = config_json(cfg);
    rep["steps"] = sum.steps;
    rep["t_final"] = s.t;
    rep["samples"] = sum.samples;
    ordered_json halves = ordered_json::array();
    for (int h = 0; h < 2; ++h) {
        const auto wT = avg.half_mean("wT", h), dzT = avg.half_mean("dzT", h);
        halves.push_back({{"samples", avg.half_samples(h)}, {"flux_z0", wT[0] - dzT[0]}});
    }
    rep["nusselt"] = {{"flux_z0", sum.nu_flux_z0},
                      {"flux_mid", sum.nu_flux_mid},
                      {"gradient", sum.nu_grad},
                      {"dissipation", sum.nu_diss},
                      {"flux_rel_std_over_z", sum.nu_flux_rel_std},
                      {"final_flux_z0", sum.nu_final_flux_z0},
                      {"Nu_H", sum.nu_flux_z0 * g.H},
                      {"final_Nu_H", sum.nu_final_flux_z0 * g.H},
                      {"half_windows", halves}};
    rep["profile"] = {{"dzT_onesided_z0", sum.dzT_onesided_z0},
                      {"dzzT_z0", sum.dzzT_z0},
                      {"nu_over_dz", sum.nu_flux_z0 / g.dz}};
    rep["linearity_sup"] = sum.linearity_sup;
    rep["max_principle"] = {{"T_min", sum.max_principle.t_min},
                            {"T_max", sum.max_principle.t_max},
                            {"violation", sum.max_principle.violation},
                            {"clip_count", s.clip_count}};
    rep["div_max"] = sum.div_max;
    const ordered_json an = analysis_json(sum.analysis);
    rep["functionals"] = an["functionals"];
    rep["inequalities"] = an["inequalities"];
    sum.report_json = rep.dump(2) + "\n";

    if (write_outputs) {
        write_text(out / "timeseries.csv", series.str());
        std::ostringstream prof;
        prof << "z,mean_T,mean_wT,mean_dzT\n";
        const auto wT = avg.mean("wT"), dzT = avg.mean("dzT");
        for (int j = 0; j < g.Nz; ++j) prof << num(g.z(j)) << ',' << num(T[j]) << ',' << num(wT[j]) << ',' << num(dzT[j]) << '\n';
        write_text(out / "profile.csv", prof.str());
        write_text(out / "report.json", sum.report_json);
        fs::remove_all(out / "checkpoint");
        save_checkpoint(out / "checkpoint", s);
        if (!sum.snapshots.empty()) save_snapshots(out / "checkpoint" / "snapshots", sum.snapshots);
    }
    return sum;
}

Analysis analyze_checkpoint(const fs::path& dir, const fs::path& report, const AnalysisOptions& opt) {
    const SimState s = load_checkpoint(dir);
    const auto snaps = load_snapshots(dir / "snapshots");
    TimeAverager avg(s.grid, std::numeric_limits<double>::lowest());
    avg.register_defaults();
    for (const auto& st : snaps) avg.add_sample(st);
    if (snaps.empty()) avg.add_sample(s);
    const Analysis a = analyze(avg, s, snaps, opt);

    ordered_json rep;
    rep["checkpoint"] = {{"H", s.grid.H}, {"Lambda", s.grid.Lambda}, {"Nx", s.grid.Nx}, {"Nz", s.grid.Nz},
                         {"t", s.t},      {"step", s.step}};
    rep["samples"] = avg.samples();
    const ordered_json an = analysis_json(a);
    rep["functionals"] = an["functionals"];
    rep["inequalities"] = an["inequalities"];
    if (report.has_parent_path()) fs::create_directories(report.parent_path());
    write_text(report, rep.dump(2) + "\n");
    std::ostringstream bands;
    bands << "ell,energy_L2\n";
    for (const auto& [ell, e] : a.bands) bands << ell << ',' << num(e) << '\n';
    write_text(report.parent_path() / (report.stem().string() + "_bands.csv"), bands.str());
    return a;
}

RunConfig sweep_member(const RunConfig& base, const std::string& param, double value) {
    RunConfig c = base;
    if (param == "H") {
        const double ratio = value / base.H;
        const int shift = int(std::lround(std::log2(ratio)));
        const double f = std::ldexp(1.0, shift);
        c.H = value;
        c.Lambda = base.Lambda * ratio;
        c.weight_delta = base.weight_delta * ratio;
        c.maxreg_delta = base.maxreg_delta * ratio;
        c.Nx = int(std::lround(base.Nx * f));
        c.Nz = int(std::lround((base.Nz - 1) * f)) + 1;
    } else if (param == "Nx") {
        c.Nx = int(std::lround(value));
    } else if (param == "Nz") {
        c.Nz = int(std::lround(value));
    } else if (param == "t_avg") {
        c.t_avg = value;
    } else {
        throw std::invalid_argument("sweep: param must be one of H, Nx, Nz, t_avg");
    }
    c.validate();
    return c;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_slope: need two or more points");
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= double(x.size());
    my /= double(x.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
    return sxy / sxx;
}

SweepSummary run_sweep(const RunConfig& base, const std::string& param, const std::vector<double>& values,
                       const fs::path& out) {
    if (values.empty()) throw std::invalid_argument("sweep: empty value list");
    std::vector<RunConfig> members;
    for (double v : values) {
        RunConfig c = sweep_member(base, param, v);
        c.out_dir = (out / member_name(param, v)).string();
        members.push_back(c);
    }
    fs::create_directories(out);
    SweepSummary sw;
    for (const auto& c : members) {
        const RunSummary r = run_simulation(c);
        SweepRow row;
        row.param_value = param == "H" ? c.H : param == "Nx" ? c.Nx : param == "Nz" ? c.Nz : c.t_avg;
        row.nu_flux = r.nu_flux_z0;
        row.nu_grad = r.nu_grad;
        row.nu_diss = r.nu_diss;
        std::copy(r.sobolev, r.sobolev + 4, row.sobolev);
        row.sup_linearity_ratio = r.linearity_sup;
        sw.rows.push_back(row);
    }
    std::ostringstream csv;
    csv << "param_value,Nu_flux,Nu_grad,Nu_diss,sobolev_a1,sobolev_a2,sobolev_a3,sobolev_a4,sup_linearity_ratio\n";
    for (const auto& r : sw.rows) {
        csv << num(r.param_value) << ',' << num(r.nu_flux) << ',' << num(r.nu_grad) << ',' << num(r.nu_diss);
        for (double s : r.sobolev) csv << ',' << num(s);
        csv << ',' << num(r.sup_linearity_ratio) << '\n';
    }
    write_text(out / "sweep.csv", csv.str());

    if (param == "H" && sw.rows.size() >= 2) {
        std::vector<double> lnH, lnlnH;
        for (const auto& r : sw.rows) {
            lnH.push_back(std::log(r.param_value));
            lnlnH.push_back(std::log(std::log(r.param_value)));
        }
        auto add = [&](const std::string& name, auto get) {
            std::vector<double> y;
            bool ok = true;
            for (const auto& r : sw.rows) {
                const double v = get(r);
                ok = ok && v > 0.0 && std::isfinite(v);
                y.push_back(ok ? std::log(v) : 0.0);
            }
            const double nan = std::numeric_limits<double>::quiet_NaN();
            sw.slopes.push_back({name, ok ? fit_slope(lnH, y) : nan, ok ? fit_slope(lnlnH, y) : nan});
        };
        add("Nu_flux", [](const SweepRow& r) { return r.nu_flux; });
        add("Nu_grad", [](const SweepRow& r) { return r.nu_grad; });
        add("Nu_diss", [](const SweepRow& r) { return r.nu_diss; });
        for (int a = 0; a < 4; ++a)
            add("sobolev_a" + std::to_string(a + 1), [a](const SweepRow& r) { return r.sobolev[a]; });
        add("sup_linearity_ratio", [](const SweepRow& r) { return r.sup_linearity_ratio; });
        std::ostringstream sl;
        sl << "quantity,slope_vs_lnH,slope_vs_lnlnH\n";
        for (const auto& s : sw.slopes) sl << s.quantity << ',' << num(s.slope_lnH) << ',' << num(s.slope_lnlnH) << '\n';
        write_text(out / "slopes.csv", sl.str());
    }
    return sw;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    try {
        RunConfig cfg = load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        const RunSummary r = run_simulation(cfg);
        std::cout << "run: " << r.steps << " steps, Nu*H = " << r.nu_flux_z0 * cfg.H << ", outputs in " << cfg.out_dir
                  << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << '\n';
        return 1;
    }
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& report) {
    try {
        const auto results = run_suite(suite, seed);
        const fs::path p(report);
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        write_text(p, results_to_json(results) + "\n");
        const long failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; });
        std::cout << "verify " << suite << ": " << results.size() << " records, " << failed << " failed\n";
        return failed == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "verify failed: " << e.what() << '\n';
        return 1;
    }
}

int cmd_analyze(const std::string& checkpoint, const std::string& report) {
    try {
        const Analysis a = analyze_checkpoint(checkpoint, report);
        std::cout << "analyze: " << a.functionals.size() << " functionals, " << a.inequalities.size()
                  << " inequality records, " << a.bands.size() << " bands\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "analyze failed: " << e.what() << '\n';
        return 1;
    }
}

int cmd_sweep(const std::string& config_path, const std::string& param, const std::string& values,
              const std::string& out_dir) {
    try {
        const RunConfig base = load_config(config_path);
        std::vector<double> v;
        std::stringstream ss(values);
        for (std::string item; std::getline(ss, item, ',');) {
            if (item.empty()) continue;
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument("sweep: bad value '" + item + "'");
        }
        const SweepSummary s = run_sweep(base, param, v, out_dir);
        std::cout << "sweep " << param << ": " << s.rows.size() << " members\n";
        for (const auto& sl : s.slopes)
            std::cout << "  " << sl.quantity << " slope vs ln H " << sl.slope_lnH << ", vs ln ln H " << sl.slope_lnlnH
                      << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "sweep failed: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace rbc
