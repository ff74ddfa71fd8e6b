#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rbc/diagnostics.hpp"
#include "rbc/inequality.hpp"
#include "rbc/thermal.hpp"

namespace rbc {

/// Flat JSON run configuration. Keys left out of the file take the defaults
/// below; derived defaults (Lambda, weight_delta, maxreg_delta) are resolved
/// from H at parse time so the echoed config is fully explicit.
struct RunConfig {
    double H = 20.0;
    double Lambda = 40.0;  // default 2H
    int Nx = 128;
    int Nz = 257;
    double cfl = 0.2;
    double dt_max = 0.5;
    double t_spin = 100.0;
    double t_avg = 50.0;
    std::string init_kind = "perturbed";
    double init_amplitude = 0.1;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::vector<std::string> diagnostics;  // extra observables on top of the defaults
    int sample_stride = 5;                 // steps between averager samples
    int series_stride = 10;                // steps between time-series rows
    int snapshot_stride = 0;               // steps between stored snapshots, 0 = none
    int snapshot_count = 8;                // ring capacity
    double bl_delta = 1.0;                 // boundary-layer width for velocity functionals
    double weight_alpha = 2.0;
    double weight_delta = 5.0;  // default H/4
    double maxreg_delta = 2.5;  // default H/8

    Grid grid() const;
    /// Throws std::invalid_argument on any violated constraint.
    void validate() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& file);
std::string dump_config(const RunConfig& cfg);

/// Parameters of the functional reports.
struct AnalysisOptions {
    double bl_delta = 1.0;
    double weight_alpha = 2.0;
    double weight_delta = 0.0;  // <= 0 means H/4
    double maxreg_delta = 0.0;  // <= 0 means H/8
};

struct Analysis {
    std::vector<FunctionalReport> functionals;
    std::vector<InequalityResult> inequalities;  // maximal-regularity checks
    std::vector<std::pair<int, double>> bands;   // (ell, int <theta_ell^2>) of the last state
};

/// Functional reports from an averager, maximal-regularity checks on the
/// snapshots (skipped when there are none), band energies of `last`.
Analysis analyze(const TimeAverager& avg, const SimState& last, const std::vector<SimState>& snapshots,
                 const AnalysisOptions& opt);

struct RunSummary {
    SimState final_state;
    long steps = 0;
    long samples = 0;
    double nu_flux_z0 = 0.0, nu_flux_mid = 0.0, nu_grad = 0.0, nu_diss = 0.0;
    double nu_flux_rel_std = 0.0;  // std over z of the flux profile / its mean
    double nu_final_flux_z0 = 0.0;
    double dzT_onesided_z0 = 0.0;  // second-order one-sided slope of <T> at z = 0
    double dzzT_z0 = 0.0;
    double linearity_sup = 0.0;
    double sobolev[4] = {0, 0, 0, 0};  // int_0^1 <|grad^a T|^{4/a}>, a = 1..4
    MaxPrinciple max_principle;        // extremes over the whole run
    double div_max = 0.0;
    std::vector<SimState> snapshots;
    Analysis analysis;
    std::string report_json;
};

/// Throws std::runtime_error naming the step when any field value is not finite.
void check_finite(const SimState& s);

/// Spin-up then averaging window. With write_outputs, fills cfg.out_dir with
/// timeseries.csv, profile.csv, report.json, checkpoint/ and, when snapshots
/// are taken, checkpoint/snapshots/. Throws on non-finite fields.
RunSummary run_simulation(const RunConfig& cfg, bool write_outputs = true);

/// Loads a checkpoint (and its snapshots), writes the JSON report and
/// <report stem>_bands.csv next to it.
Analysis analyze_checkpoint(const std::filesystem::path& dir, const std::filesystem::path& report,
                            const AnalysisOptions& opt = {});

struct SweepRow {
    double param_value = 0.0;
    double nu_flux = 0.0, nu_grad = 0.0, nu_diss = 0.0;
    double sobolev[4] = {0, 0, 0, 0};
    double sup_linearity_ratio = 0.0;
};
struct SweepSlope {
    std::string quantity;
    double slope_lnH = 0.0;    // d ln(value) / d ln H
    double slope_lnlnH = 0.0;  // d ln(value) / d ln ln H
};
struct SweepSummary {
    std::vector<SweepRow> rows;
    std::vector<SweepSlope> slopes;  // only for param == "H"
};

/// Member config for one sweep value. For H the grid counts are scaled by
/// the nearest power of two of H'/H and H-proportional lengths follow H.
RunConfig sweep_member(const RunConfig& base, const std::string& param, double value);
/// param in {H, Nx, Nz, t_avg}. Writes out/<param>_<value>/ per member,
/// sweep.csv and, for H, slopes.csv.
SweepSummary run_sweep(const RunConfig& base, const std::string& param, const std::vector<double>& values,
                       const std::filesystem::path& out);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// CLI entry points: return the process exit status, print errors to stderr.
int cmd_run(const std::string& config_path, const std::string& out_dir);
int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& report);
int cmd_analyze(const std::string& checkpoint, const std::string& report);
int cmd_sweep(const std::string& config_path, const std::string& param, const std::string& values,
              const std::string& out_dir);

}  // namespace rbc
