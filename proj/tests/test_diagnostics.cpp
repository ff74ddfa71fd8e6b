#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rbc/diagnostics.hpp"

using namespace rbc;
using std::numbers::pi;

namespace {

SimState conduction(const Grid& g, double t = 0.0) {
    SimState s;
    s.grid = g;
    s.t = t;
    s.theta = PhysicalField(g, Boundary::homogeneous(), Parity::odd);
    s.u = VectorField{PhysicalField(g), PhysicalField(g)};
    return s;
}

}  // namespace

TEST_CASE("conduction Nusselt numbers equal 1/H") {
    const Grid g = make_grid(7.0, 14.0, 16, 129);
    const SimState s = conduction(g);
    const NusseltSnapshot n = nusselt_snapshot(s);
    CHECK(n.flux_z0 == doctest::Approx(1.0 / g.H));
    CHECK(n.flux_mid == doctest::Approx(1.0 / g.H));
    CHECK(n.grad == doctest::Approx(1.0 / g.H));
    CHECK(n.diss == doctest::Approx(1.0 / g.H));

    TimeAverager avg(g);
    avg.register_defaults();
    CHECK(avg.add_sample(s));
    CHECK(nusselt_flux(avg, 0.0) == doctest::Approx(1.0 / g.H));
    CHECK(nusselt_flux(avg, g.H / 2) == doctest::Approx(1.0 / g.H));
    CHECK(nusselt_gradient(avg) == doctest::Approx(1.0 / g.H));
    CHECK(nusselt_dissipation(avg) == doctest::Approx(1.0 / g.H));
    CHECK(sobolev_bl_functional(avg, 1, 1.0) == doctest::Approx(std::pow(g.H, -4)));
    CHECK(sobolev_bl_functional(avg, 2, 1.0) == doctest::Approx(0.0));
    CHECK_THROWS(sobolev_bl_functional(avg, 5, 1.0));
    CHECK_THROWS(nusselt_flux(avg, -1.0));

    // Velocity functionals vanish; 0/0 ratios are reported as 0.
    for (const auto& r : velocity_bl_functionals(avg, 1.0)) {
        CHECK(r.value == 0.0);
        CHECK(r.ratio == 0.0);
    }
    for (const auto& r : u_global_norms(avg, 2.0)) CHECK(r.value == 0.0);
    const auto wv = weighted_velocity_functionals(avg, 1.0, 2.0);
    CHECK(wv.size() == 5);
    for (const auto& r : wv) CHECK(r.ratio == 0.0);
}

TEST_CASE("argument validation") {
    const Grid g = make_grid(7.0, 14.0, 16, 65);
    TimeAverager avg(g);
    avg.register_defaults();
    CHECK_THROWS(avg.mean("T"));
    avg.add_sample(conduction(g));
    CHECK_THROWS(avg.mean("nope"));
    CHECK_THROWS(avg.register_observable("T"));
    CHECK_THROWS(weighted_velocity_functionals(avg, 1.0, 1.0));
    CHECK_THROWS(weighted_velocity_functionals(avg, 1.0, 0.5));
    CHECK_THROWS(u_global_norms(avg, 1.0));
    CHECK_THROWS(velocity_bl_functionals(avg, 0.0));
    CHECK_THROWS(velocity_bl_functionals(avg, 8.0));
    TimeAverager other(g);
    CHECK_THROWS(other.register_observable("bogus"));
    CHECK_THROWS(other.register_observable("sobolev_7"));
}

TEST_CASE("linearity deviation of a cubic profile") {
    const double H = 10.0, Nu = 0.4;
    const int nz = 401;
    const double dz = H / (nz - 1);
    std::vector<double> T(nz);
    for (int j = 0; j < nz; ++j) {
        const double z = j * dz;
        T[j] = 1.0 - z * Nu + z * z * z;
    }
    const auto d = linearity_deviation(T, dz, Nu);
    CHECK(d.z.size() == 40);
    CHECK(d.z.front() == doctest::Approx(dz / 2));
    for (double r : d.ratio) CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.sup == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("analytic observable profiles") {
    const double H = 2.0, Lambda = 4.0;
    const double ky = 2 * pi / Lambda;
    const Grid g = make_grid(H, Lambda, 16, 257);
    SimState s = conduction(g);
    for (int j = 0; j < g.Nz; ++j)
        for (int i = 0; i < g.Nx; ++i) {
            const double z = g.z(j), c = std::cos(ky * g.y(i));
            s.theta(i, j) = std::sin(pi * z / H) * c;
            s.u.w(i, j) = z * z * (H - z) * (H - z) * c;
            s.u.v(i, j) = std::sin(2 * pi * z / H) * std::sin(ky * g.y(i));
        }
    for (int i = 0; i < g.Nx; ++i) s.theta(i, 0) = s.theta(i, g.Nz - 1) = 0.0;

    const auto p = observable_profiles(
        s, {"T", "wT", "dzT", "dzzT", "grad_T_sq", "grad_w_sq", "grad_y_v_sq", "dz_v_sq", "invgy_w_sq", "invgy_dzw_sq",
            "grad_u_sq", "grad_u_pow:2", "grad2_u_pow:2", "sobolev_2"});
    double worst = 0.0;
    auto check = [&](const std::string& name, double got, double want) {
        const double e = std::abs(got - want);
        if (e > 1e-3 * (1.0 + std::abs(want))) FAIL_CHECK(name << ": " << got << " vs " << want);
        worst = std::max(worst, e);
    };
    for (int j = 0; j < g.Nz; ++j) {
        const double z = g.z(j), sn = std::sin(pi * z / H), cs = std::cos(pi * z / H);
        const double w = z * z * (H - z) * (H - z), wz = 2 * z * (H - z) * (H - 2 * z);
        const double wzz = 2 * H * H - 12 * H * z + 12 * z * z;
        const double a = pi / H;
        const double v = std::sin(2 * a * z), vz = 2 * a * std::cos(2 * a * z), vzz = -4 * a * a * v;
        check("T", p.at("T")[j], 1.0 - z / H);
        check("wT", p.at("wT")[j], 0.5 * w * sn);
        check("dzT", p.at("dzT")[j], -1.0 / H);
        check("dzzT", p.at("dzzT")[j], 0.0);
        check("grad_T_sq", p.at("grad_T_sq")[j], 0.5 * ky * ky * sn * sn + 0.5 * a * a * cs * cs + 1.0 / (H * H));
        check("grad_w_sq", p.at("grad_w_sq")[j], 0.5 * (ky * ky * w * w + wz * wz));
        check("grad_y_v_sq", p.at("grad_y_v_sq")[j], 0.5 * ky * ky * v * v);
        check("dz_v_sq", p.at("dz_v_sq")[j], 0.5 * vz * vz);
        check("invgy_w_sq", p.at("invgy_w_sq")[j], 0.5 * w * w / (ky * ky));
        check("invgy_dzw_sq", p.at("invgy_dzw_sq")[j], 0.5 * wz * wz / (ky * ky));
        const double gu = 0.5 * (ky * ky * (w * w + v * v) + wz * wz + vz * vz);
        check("grad_u_sq", p.at("grad_u_sq")[j], gu);
        check("grad_u_pow:2", p.at("grad_u_pow:2")[j], gu);
        // |grad^2 f|^2 = f_yy^2 + 2 f_yz^2 + f_zz^2 for each component.
        const double g2 = 0.5 * (std::pow(ky, 4) * (w * w + v * v) + 2 * ky * ky * (wz * wz + vz * vz) + wzz * wzz +
                                 vzz * vzz);
        check("grad2_u_pow:2", p.at("grad2_u_pow:2")[j], g2);
        // theta = sin(az) cos(ky y): |grad^2 theta|^2 averaged over y.
        const double t2 = 0.5 * (std::pow(ky, 4) * sn * sn + 2 * ky * ky * a * a * cs * cs + std::pow(a, 4) * sn * sn);
        check("sobolev_2", p.at("sobolev_2")[j], t2);
    }
    MESSAGE("worst abs error " << worst);
}

TEST_CASE("time averaging window and half windows") {
    const Grid g = make_grid(3.0, 6.0, 16, 33);
    TimeAverager avg(g, 10.0, 20.0);
    avg.register_observable("T");
    avg.register_observable("grad_u_pow:1.5");
    CHECK(avg.has("grad_u_pow:1.5"));
    CHECK(format_q(1.5) == "1.5");
    CHECK(format_q(2.0) == "2");
    CHECK_FALSE(avg.add_sample(conduction(g, 5.0)));
    CHECK(avg.samples() == 0);
    for (double t : {10.0, 12.0, 19.0, 21.0, 25.0, 30.0}) {
        SimState s = conduction(g, t);
        for (int i = 0; i < g.Nx; ++i) s.theta(i, 5) = t;  // interior node only
        CHECK(avg.add_sample(s));
    }
    CHECK(avg.samples() == 6);
    CHECK(avg.half_samples(0) == 3);
    CHECK(avg.half_samples(1) == 3);
    CHECK(avg.mean("T")[5] == doctest::Approx(1.0 - g.z(5) / g.H + 117.0 / 6.0));
    CHECK(avg.half_mean("T", 0)[5] == doctest::Approx(1.0 - g.z(5) / g.H + 41.0 / 3.0));
    CHECK(avg.half_mean("T", 1)[5] == doctest::Approx(1.0 - g.z(5) / g.H + 76.0 / 3.0));
    CHECK_THROWS(avg.half_mean("T", 2));
}
