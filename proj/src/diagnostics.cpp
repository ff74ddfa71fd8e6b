#include "rbc/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include "rbc/quadrature.hpp"

namespace rbc {

std::string format_q(double q) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", q);
    return buf;
}

namespace {

// Derivatives of the current state, computed on first use.
class StateFields {
public:
    explicit StateFields(const SimState& s) : s_(s), g_(s.grid) {}

    const PhysicalField& T() { return get(T_, [&] { return temperature(s_); }); }
    const PhysicalField& theta_y() { return get(ty_, [&] { return d_dy(theta(), 1); }); }
    const PhysicalField& theta_z() { return get(tz_, [&] { return d_dz(theta(), 1); }); }
    const PhysicalField& theta_zz() { return get(tzz_, [&] { return d_dz(theta(), 2); }); }
    const PhysicalField& v_y() { return get(vy_, [&] { return d_dy(v(), 1); }); }
    const PhysicalField& v_z() { return get(vz_, [&] { return d_dz(v(), 1); }); }
    const PhysicalField& w_y() { return get(wy_, [&] { return d_dy(w(), 1); }); }
    const PhysicalField& w_z() { return get(wz_, [&] { return d_dz(w(), 1); }); }

    PhysicalField theta() const {
        PhysicalField t = s_.theta;
        t.parity = Parity::odd;
        return t;
    }
    // Velocity derivatives use one-sided wall stencils.
    PhysicalField v() const {
        PhysicalField f = s_.u.v;
        f.parity = Parity::none;
        return f;
    }
    PhysicalField w() const {
        PhysicalField f = s_.u.w;
        f.parity = Parity::none;
        return f;
    }

    PhysicalField grad_u_sq() {
        PhysicalField out(g_);
        const auto &a = v_y(), &b = v_z(), &c = w_y(), &d = w_z();
        for (std::size_t n = 0; n < out.data.size(); ++n)
            out.data[n] = a.data[n] * a.data[n] + b.data[n] * b.data[n] + c.data[n] * c.data[n] + d.data[n] * d.data[n];
        return out;
    }

    PhysicalField grad_T_sq() {
        PhysicalField out(g_);
        const auto &a = theta_y(), &b = theta_z();
        const double lin = 1.0 / g_.H;
        for (std::size_t n = 0; n < out.data.size(); ++n) {
            const double tz = b.data[n] - lin;
            out.data[n] = a.data[n] * a.data[n] + tz * tz;
        }
        return out;
    }

    // |grad^order u|^2 summed over components.
    PhysicalField grad_n_u_sq(int order) {
        if (order == 1) return grad_u_sq();
        const PhysicalField a = grad_alpha_magnitude(v(), order);
        const PhysicalField b = grad_alpha_magnitude(w(), order);
        PhysicalField out(g_);
        for (std::size_t n = 0; n < out.data.size(); ++n) out.data[n] = a.data[n] * a.data[n] + b.data[n] * b.data[n];
        return out;
    }

    const Grid& grid() const { return g_; }
    const SimState& state() const { return s_; }

private:
    template <class F>
    const PhysicalField& get(std::optional<PhysicalField>& slot, F make) {
        if (!slot) slot = make();
        return *slot;
    }

    const SimState& s_;
    Grid g_;
    std::optional<PhysicalField> T_, ty_, tz_, tzz_, vy_, vz_, wy_, wz_;
};

PhysicalField map_field(const PhysicalField& f, auto fn) {
    PhysicalField out(f.grid);
    for (std::size_t n = 0; n < out.data.size(); ++n) out.data[n] = fn(f.data[n]);
    return out;
}

PhysicalField product(const PhysicalField& a, const PhysicalField& b) {
    PhysicalField out(a.grid);
    for (std::size_t n = 0; n < out.data.size(); ++n) out.data[n] = a.data[n] * b.data[n];
    return out;
}

PhysicalField compute(StateFields& f, const std::string& name) {
    const Grid& g = f.grid();
    if (name == "T") return f.T();
    if (name == "wT") return product(f.state().u.w, f.T());
    if (name == "dzT") return map_field(f.theta_z(), [&](double x) { return x - 1.0 / g.H; });
    if (name == "dzzT") return f.theta_zz();
    if (name == "grad_T_sq") return f.grad_T_sq();
    if (name == "grad_u_sq") return f.grad_u_sq();
    if (name == "grad_y_v_sq") return product(f.v_y(), f.v_y());
    if (name == "dz_v_sq") return product(f.v_z(), f.v_z());
    if (name == "grad_w_sq") {
        PhysicalField a = product(f.w_y(), f.w_y());
        const PhysicalField b = product(f.w_z(), f.w_z());
        for (std::size_t n = 0; n < a.data.size(); ++n) a.data[n] += b.data[n];
        return a;
    }
    if (name == "invgy_w_sq") {
        const PhysicalField r = inv_grad_y(f.w());
        return product(r, r);
    }
    if (name == "invgy_dzw_sq") {
        const PhysicalField r = inv_grad_y(f.w_z());
        return product(r, r);
    }
    if (name.rfind("sobolev_", 0) == 0) {
        const int a = std::stoi(name.substr(8));
        if (a < 1 || a > 4) throw std::invalid_argument("unknown observable '" + name + "'");
        if (a == 1) return map_field(f.grad_T_sq(), [](double x) { return x * x; });
        const double power = 4.0 / a;
        return map_field(grad_alpha_magnitude(f.theta(), a), [&](double x) { return std::pow(x, power); });
    }
    for (int order = 1; order <= 3; ++order) {
        const std::string prefix = order == 1 ? "grad_u_pow:" : "grad" + std::to_string(order) + "_u_pow:";
        if (name.rfind(prefix, 0) == 0) {
            const double q = std::stod(name.substr(prefix.size()));
            return map_field(f.grad_n_u_sq(order), [&](double x) { return std::pow(x, 0.5 * q); });
        }
    }
    throw std::invalid_argument("unknown observable '" + name + "'");
}

double trapezoid(const std::vector<double>& v, double dz, double a, double b) {
    return weighted_z_integral(Profile{v, Profile::Sampling::nodes, dz}, Weight::one(), a, b);
}

double singular(const std::vector<double>& v, double dz, const Weight& w, double a, double b) {
    return weighted_z_integral(to_cell_centers(Profile{v, Profile::Sampling::nodes, dz}), w, a, b);
}

}  // namespace

std::map<std::string, std::vector<double>> observable_profiles(const SimState& s, const std::vector<std::string>& names) {
    StateFields f(s);
    std::map<std::string, std::vector<double>> out;
    for (const auto& n : names) out[n] = horizontal_mean(compute(f, n));
    return out;
}

TimeAverager::TimeAverager(const Grid& grid, double t_spin, double t_avg) : grid_(grid), t_spin_(t_spin), t_avg_(t_avg) {}

void TimeAverager::register_observable(const std::string& name) {
    if (samples_ > 0) throw std::logic_error("TimeAverager: register observables before sampling");
    // Validate the name on a conduction state.
    if (!sums_.count(name)) {
        SimState probe;
        probe.grid = grid_;
        probe.theta = PhysicalField(grid_, Boundary::homogeneous(), Parity::odd);
        probe.u = VectorField{PhysicalField(grid_), PhysicalField(grid_)};
        observable_profiles(probe, {name});
    }
    sums_[name].assign(grid_.Nz, 0.0);
    half_sums_[0][name].assign(grid_.Nz, 0.0);
    half_sums_[1][name].assign(grid_.Nz, 0.0);
}

void TimeAverager::register_defaults() {
    for (const char* n : {"T", "wT", "dzT", "dzzT", "grad_T_sq", "grad_u_sq", "sobolev_1", "sobolev_2", "sobolev_3",
                          "sobolev_4", "grad_y_v_sq", "grad_w_sq", "dz_v_sq", "invgy_w_sq", "invgy_dzw_sq",
                          "grad_u_pow:2", "grad2_u_pow:2", "grad3_u_pow:2", "grad_u_pow:4", "grad2_u_pow:4"})
        register_observable(n);
}

std::vector<std::string> TimeAverager::names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : sums_) out.push_back(k);
    return out;
}

bool TimeAverager::add_sample(const SimState& s) {
    if (s.t < t_spin_) return false;
    const auto profiles = observable_profiles(s, names());
    int half = -1;
    if (t_avg_ > 0.0) half = (s.t < t_spin_ + 0.5 * t_avg_) ? 0 : 1;
    for (const auto& [name, prof] : profiles) {
        auto& sum = sums_[name];
        for (int j = 0; j < grid_.Nz; ++j) sum[j] += prof[j];
        if (half >= 0) {
            auto& hs = half_sums_[half][name];
            for (int j = 0; j < grid_.Nz; ++j) hs[j] += prof[j];
        }
    }
    ++samples_;
    if (half >= 0) ++half_samples_[half];
    return true;
}

void TimeAverager::check(const std::string& name) const {
    if (!sums_.count(name)) throw std::invalid_argument("TimeAverager: observable '" + name + "' is not registered");
    if (samples_ == 0) throw std::logic_error("TimeAverager: no samples");
}

std::vector<double> TimeAverager::mean(const std::string& name) const {
    check(name);
    std::vector<double> out = sums_.at(name);
    for (double& x : out) x /= double(samples_);
    return out;
}

std::vector<double> TimeAverager::half_mean(const std::string& name, int half) const {
    check(name);
    if (half < 0 || half > 1) throw std::invalid_argument("TimeAverager: half must be 0 or 1");
    if (half_samples_[half] == 0) throw std::logic_error("TimeAverager: empty half window");
    std::vector<double> out = half_sums_[half].at(name);
    for (double& x : out) x /= double(half_samples_[half]);
    return out;
}

NusseltSnapshot nusselt_snapshot(const SimState& s) {
    const auto p = observable_profiles(s, {"wT", "dzT", "grad_T_sq", "grad_u_sq"});
    const Grid& g = s.grid;
    const int mid = (g.Nz - 1) / 2;
    NusseltSnapshot n;
    n.flux_z0 = p.at("wT")[0] - p.at("dzT")[0];
    n.flux_mid = p.at("wT")[mid] - p.at("dzT")[mid];
    n.grad = trapezoid(p.at("grad_T_sq"), g.dz, 0.0, g.H);
    n.diss = trapezoid(p.at("grad_u_sq"), g.dz, 0.0, g.H) / g.H + 1.0 / g.H;
    return n;
}

double nusselt_flux(const TimeAverager& avg, double z) {
    const Grid& g = avg.grid();
    if (z < 0.0 || z > g.H) throw std::invalid_argument("nusselt_flux: z outside [0, H]");
    const int j = int(std::lround(z / g.dz));
    return avg.mean("wT")[j] - avg.mean("dzT")[j];
}

double nusselt_gradient(const TimeAverager& avg) {
    return trapezoid(avg.mean("grad_T_sq"), avg.grid().dz, 0.0, avg.grid().H);
}

double nusselt_dissipation(const TimeAverager& avg) {
    const Grid& g = avg.grid();
    return trapezoid(avg.mean("grad_u_sq"), g.dz, 0.0, g.H) / g.H + 1.0 / g.H;
}

std::vector<double> mean_profile(const TimeAverager& avg) { return avg.mean("T"); }

LinearityDeviation linearity_deviation(const std::vector<double>& mean_T, double dz, double Nu) {
    const Profile c = to_cell_centers(Profile{mean_T, Profile::Sampling::nodes, dz});
    LinearityDeviation out;
    for (std::size_t j = 0; j < c.values.size(); ++j) {
        const double z = c.z(j);
        if (z > 1.0) break;
        const double r = std::abs(c.values[j] - (1.0 - z * Nu)) / (z * z * z);
        out.z.push_back(z);
        out.ratio.push_back(r);
        out.sup = std::max(out.sup, r);
    }
    return out;
}

LinearityDeviation linearity_deviation(const TimeAverager& avg, double Nu) {
    return linearity_deviation(avg.mean("T"), avg.grid().dz, Nu);
}

double sobolev_bl_functional(const TimeAverager& avg, int alpha, double z_top) {
    if (alpha < 1 || alpha > 4) throw std::invalid_argument("sobolev_bl_functional: alpha must be in 1..4");
    const Grid& g = avg.grid();
    return trapezoid(avg.mean("sobolev_" + std::to_string(alpha)), g.dz, 0.0, std::min(z_top, g.H));
}

double safe_ratio(double value, double comparator) {
    if (comparator == 0.0 && value == 0.0) return 0.0;
    return value / comparator;
}

FunctionalReport make_report(std::string name, double value, double comparator, std::map<std::string, double> params) {
    FunctionalReport r;
    r.name = std::move(name);
    r.value = value;
    r.comparator = comparator;
    r.ratio = safe_ratio(value, comparator);
    r.params = std::move(params);
    return r;
}

std::vector<FunctionalReport> velocity_bl_functionals(const TimeAverager& avg, double delta) {
    const Grid& g = avg.grid();
    if (!(delta > 0.0) || delta > g.H) throw std::invalid_argument("velocity_bl_functionals: delta must be in (0, H]");
    const double Nu = nusselt_flux(avg, 0.0);
    const double L = std::log(g.H);
    const std::map<std::string, double> params{{"delta", delta}};
    return {
        make_report("bl_grad_y_v", trapezoid(avg.mean("grad_y_v_sq"), g.dz, 0.0, delta), delta * L * Nu, params),
        make_report("bl_grad_w", trapezoid(avg.mean("grad_w_sq"), g.dz, 0.0, delta), delta * L * Nu, params),
        make_report("bl_dz_v", trapezoid(avg.mean("dz_v_sq"), g.dz, 0.0, delta), delta * L * L * L * Nu, params),
    };
}

std::vector<FunctionalReport> weighted_velocity_functionals(const TimeAverager& avg, double delta, double alpha) {
    const Grid& g = avg.grid();
    if (!(alpha > 1.0)) throw std::invalid_argument("weighted_velocity_functionals: alpha must exceed 1");
    if (!(delta > 0.0) || !(delta < g.H)) throw std::invalid_argument("weighted_velocity_functionals: delta must be in (0, H)");
    const double Nu = nusselt_flux(avg, 0.0);
    const double L = std::log(g.H);
    const double dz = g.dz;
    const double grad_w = singular(avg.mean("grad_w_sq"), dz, Weight::inv_z(), 0.0, g.H);
    const double tw = singular(avg.mean("wT"), dz, Weight::inv_z(), 0.0, g.H);
    const auto iw = avg.mean("invgy_w_sq");
    const auto idw = avg.mean("invgy_dzw_sq");
    const double bl_w = singular(iw, dz, Weight::inv_z_pow(5.0 - alpha), 0.0, delta);
    const double bl_dw = singular(idw, dz, Weight::inv_z_pow(3.0 - alpha), 0.0, delta);
    const double bulk_w = singular(iw, dz, Weight::inv_z_pow(5.0), delta, g.H);
    const double bulk_dw = singular(idw, dz, Weight::inv_z_pow(3.0), delta, g.H);
    const double l2 = std::pow(std::log(g.H / delta), 2);
    const std::map<std::string, double> p{{"delta", delta}, {"alpha", alpha}};
    auto with = [&](std::map<std::string, double> extra) {
        extra.insert(p.begin(), p.end());
        return extra;
    };
    return {
        make_report("grad_w_over_z", grad_w, tw),
        make_report("Tw_over_z", tw, L * Nu),
        make_report("grad_w_over_z_vs_nu", grad_w, L * Nu),
        make_report("weighted_bl", bl_w + bl_dw, std::pow(delta, alpha) / (alpha - 1.0) * l2 * tw,
                    with({{"term_w", bl_w}, {"term_dzw", bl_dw}})),
        make_report("weighted_bulk", bulk_w + bulk_dw, l2 * tw, with({{"term_w", bulk_w}, {"term_dzw", bulk_dw}})),
    };
}

std::vector<FunctionalReport> u_global_norms(const TimeAverager& avg, double q) {
    if (!(q > 1.0)) throw std::invalid_argument("u_global_norms: q must exceed 1");
    const Grid& g = avg.grid();
    const std::string qs = format_q(q);
    const double g1 = trapezoid(avg.mean("grad_u_pow:" + qs), g.dz, 0.0, g.H);
    const double g2 = trapezoid(avg.mean("grad2_u_pow:" + qs), g.dz, 0.0, g.H);
    const double g3 = trapezoid(avg.mean("grad3_u_pow:2"), g.dz, 0.0, g.H);
    const double Nu = nusselt_flux(avg, 0.0);
    const std::map<std::string, double> p{{"q", q}};
    return {
        make_report("grad_u_lq_scaled", std::pow(g.H, -q) * g1, g2, p),
        make_report("grad2_u_lq", g2, g.H, p),
        make_report("grad3_u_l2", g3, Nu),
    };
}

}  // namespace rbc
