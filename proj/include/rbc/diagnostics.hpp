#pragma once

#include <map>
#include <string>
#include <vector>

#include "rbc/thermal.hpp"

namespace rbc {

/// Streaming horizontal + time averages of named z-profiles.
///
/// Observables are registered by name before sampling. Known names:
///   T, wT, dzT, dzzT, grad_T_sq, grad_u_sq, sobolev_<a> (|grad^a T|^{4/a}),
///   grad_y_v_sq, grad_w_sq, dz_v_sq, invgy_w_sq, invgy_dzw_sq,
///   grad_u_pow:<q>, grad2_u_pow:<q>, grad3_u_pow:<q>.
/// Samples taken before t_spin are ignored. When t_avg > 0, samples are also
/// split into the two half windows for a convergence estimate.
class TimeAverager {
public:
    TimeAverager(const Grid& grid, double t_spin = 0.0, double t_avg = 0.0);

    void register_observable(const std::string& name);
    void register_defaults();
    bool has(const std::string& name) const { return sums_.count(name) != 0; }
    std::vector<std::string> names() const;

    /// Adds one sample; returns false if the state is still in spin-up.
    bool add_sample(const SimState& s);

    long samples() const { return samples_; }
    const Grid& grid() const { return grid_; }
    double t_spin() const { return t_spin_; }

    /// Mean profile at the nodes. Throws if empty or unregistered.
    std::vector<double> mean(const std::string& name) const;
    /// Means over the first and second half of the averaging window.
    std::vector<double> half_mean(const std::string& name, int half) const;
    long half_samples(int half) const { return half_samples_[half]; }

private:
    void check(const std::string& name) const;

    Grid grid_;
    double t_spin_, t_avg_;
    long samples_ = 0;
    long half_samples_[2] = {0, 0};
    std::map<std::string, std::vector<double>> sums_;
    std::map<std::string, std::vector<double>> half_sums_[2];
};

/// Instantaneous horizontal-mean profiles for the given observable names.
std::map<std::string, std::vector<double>> observable_profiles(const SimState& s, const std::vector<std::string>& names);

/// Instantaneous (single-state) Nusselt estimates.
struct NusseltSnapshot {
    double flux_z0 = 0.0;
    double flux_mid = 0.0;
    double grad = 0.0;
    double diss = 0.0;
};
NusseltSnapshot nusselt_snapshot(const SimState& s);

/// <wT - dT/dz> at the node nearest z.
double nusselt_flux(const TimeAverager& avg, double z);
/// int_0^H <|grad T|^2> dz.
double nusselt_gradient(const TimeAverager& avg);
/// (1/H) int_0^H <|grad u|^2> dz + 1/H.
double nusselt_dissipation(const TimeAverager& avg);
/// <T>(z_j) at the nodes.
std::vector<double> mean_profile(const TimeAverager& avg);

/// |<T>(z) - (1 - z Nu)| / z^3 at cell centers in (0, 1].
struct LinearityDeviation {
    std::vector<double> z;
    std::vector<double> ratio;
    double sup = 0.0;
};
LinearityDeviation linearity_deviation(const TimeAverager& avg, double Nu);
/// Same, for an explicit node profile of <T>.
LinearityDeviation linearity_deviation(const std::vector<double>& mean_T, double dz, double Nu);

/// int_0^{z_top} <|grad^alpha T|^{4/alpha}> dz.
double sobolev_bl_functional(const TimeAverager& avg, int alpha, double z_top);

struct FunctionalReport {
    std::string name;
    double value = 0.0;
    std::map<std::string, double> params;
    double comparator = 0.0;
    double ratio = 0.0;
};

/// value / comparator with 0/0 reported as 0.
double safe_ratio(double value, double comparator);
FunctionalReport make_report(std::string name, double value, double comparator, std::map<std::string, double> params = {});

/// Boundary-layer velocity integrals over [0, delta].
std::vector<FunctionalReport> velocity_bl_functionals(const TimeAverager& avg, double delta);
/// Singular-weight integrals and the weighted boundary-layer/bulk integrals.
std::vector<FunctionalReport> weighted_velocity_functionals(const TimeAverager& avg, double delta, double alpha);
/// Global L_q norms of the velocity gradients.
std::vector<FunctionalReport> u_global_norms(const TimeAverager& avg, double q);

/// Formats q the way the observable names expect ("2", "1.5").
std::string format_q(double q);

}  // namespace rbc
