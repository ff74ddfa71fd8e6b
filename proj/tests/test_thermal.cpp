#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rbc/thermal.hpp"

using namespace rbc;
using std::numbers::pi;

namespace {

PhysicalField sine_theta(const Grid& g, double ky_modes = 0.0) {
    PhysicalField th(g);
    for (int j = 0; j < g.Nz; ++j)
        for (int i = 0; i < g.Nx; ++i)
            th(i, j) = std::sin(pi * g.z(j) / g.H) * std::cos(2 * pi * ky_modes * g.y(i) / g.Lambda);
    for (int i = 0; i < g.Nx; ++i) th(i, 0) = th(i, g.Nz - 1) = 0.0;
    return th;
}

double l2(const PhysicalField& f) {
    double s = 0.0;
    for (double x : f.data) s += x * x;
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("conduction is a fixed point") {
    const Grid g = make_grid(5.0, 10.0, 32, 65);
    const ThermalStepper stepper(g);
    SimState s = stepper.init_state("conduction", 0.0, 1);
    CHECK(s.theta.max_abs() == 0.0);
    CHECK(s.u.w.max_abs() == 0.0);
    const SimState n = stepper.step(s, 0.1);
    CHECK(n.theta.max_abs() <= 1e-13);
    CHECK(n.t == doctest::Approx(0.1));
    CHECK(n.step == 1);
    const auto mp = max_principle_monitor(s);
    CHECK(mp.t_min == 0.0);
    CHECK(mp.t_max == 1.0);
    CHECK(mp.violation == 0.0);
    CHECK_THROWS_AS(stepper.init_state("bogus", 0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(stepper.step(s, -1.0), std::invalid_argument);
}

TEST_CASE("perturbed start is deterministic and clipped") {
    const Grid g = make_grid(5.0, 10.0, 32, 65);
    const ThermalStepper stepper(g);
    const SimState a = stepper.init_state("perturbed", 0.1, 7);
    const SimState b = stepper.init_state("perturbed", 0.1, 7);
    const SimState c = stepper.init_state("perturbed", 0.1, 8);
    CHECK(a.theta.data == b.theta.data);
    CHECK(a.theta.data != c.theta.data);
    CHECK(a.clip_count == 0);
    const SimState big = stepper.init_state("perturbed", 3.0, 7);
    CHECK(big.clip_count > 0);
    const auto mp = max_principle_monitor(big);
    CHECK(mp.violation <= 1e-12);
}

TEST_CASE("cfl_dt") {
    const Grid g = make_grid(5.0, 10.0, 32, 51);  // dz = 0.1
    const ThermalStepper stepper(g);
    SimState s = stepper.init_state("conduction", 0.0, 1);
    CHECK(cfl_dt(s, 0.2, 0.5) == 0.5);
    s.u.w.data[100] = 2.0;
    CHECK(cfl_dt(s, 0.2, 0.5) == doctest::Approx(0.01));
    s.u.w.data[100] = 4.0;
    CHECK(cfl_dt(s, 0.2, 0.5) == doctest::Approx(0.005));
    CHECK_THROWS(cfl_dt(s, 0.0, 0.5));
}

TEST_CASE("pure diffusion decay") {
    const Grid g = make_grid(2.0, 4.0, 16, 129);
    const ThermalStepper stepper(g);
    SimState s = stepper.make_state(sine_theta(g));
    s.u = VectorField{PhysicalField(g), PhysicalField(g)};
    StepOptions opt;
    opt.update_velocity = false;
    const double dt = 1e-3;
    const SimState n = stepper.step(s, dt, opt);
    const double ratio = n.theta(0, 64) / s.theta(0, 64);
    const double lambda = (pi / g.H) * (pi / g.H);
    CHECK(std::abs(ratio - std::exp(-lambda * dt)) < dt * dt * lambda * lambda + 2.0 * g.dz * g.dz * dt);

    // Unconditional stability without forcing.
    SimState r = stepper.make_state(sine_theta(g, 3.0));
    r.u = VectorField{PhysicalField(g), PhysicalField(g)};
    double prev = l2(r.theta);
    for (double big : {10.0, 100.0, 1000.0}) {
        r = stepper.step(r, big, opt);
        const double cur = l2(r.theta);
        CHECK(cur <= prev);
        prev = cur;
    }
}

TEST_CASE("manufactured solution: first order in time, second in space") {
    const double H = 1.0, Lambda = 2.0;
    const double ky = 2 * pi / Lambda;
    const double lam = (pi / H) * (pi / H) + ky * ky;
    auto exact = [&](double y, double z, double t) { return std::exp(-t) * std::sin(pi * z / H) * std::cos(ky * y); };
    auto run = [&](int nz, int nsteps, double tend) {
        const Grid g = make_grid(H, Lambda, 16, nz);
        const ThermalStepper stepper(g);
        PhysicalField th(g);
        for (int j = 1; j < nz - 1; ++j)
            for (int i = 0; i < g.Nx; ++i) th(i, j) = exact(g.y(i), g.z(j), 0.0);
        SimState s = stepper.make_state(th);
        s.u = VectorField{PhysicalField(g), PhysicalField(g)};
        StepOptions opt;
        opt.update_velocity = false;
        opt.source = [&](double y, double z, double t) { return (lam - 1.0) * exact(y, z, t); };
        const double dt = tend / nsteps;
        for (int n = 0; n < nsteps; ++n) s = stepper.step(s, dt, opt);
        double e = 0.0;
        for (int j = 0; j < nz; ++j)
            for (int i = 0; i < g.Nx; ++i) e = std::max(e, std::abs(s.theta(i, j) - exact(g.y(i), g.z(j), s.t)));
        return e;
    };
    const double e1 = run(257, 20, 0.2), e2 = run(257, 40, 0.2), e3 = run(257, 80, 0.2);
    CHECK(std::log2(e1 / e2) == doctest::Approx(1.0).epsilon(0.2));
    CHECK(std::log2(e2 / e3) == doctest::Approx(1.0).epsilon(0.2));

    // Steady manufactured solution isolates the spatial error.
    auto steady = [&](int nz) {
        const Grid g = make_grid(H, Lambda, 16, nz);
        const ThermalStepper stepper(g);
        SimState s = stepper.make_state(PhysicalField(g));
        s.u = VectorField{PhysicalField(g), PhysicalField(g)};
        StepOptions opt;
        opt.update_velocity = false;
        opt.source = [&](double y, double z, double) { return lam * exact(y, z, 0.0); };
        for (int n = 0; n < 60; ++n) s = stepper.step(s, 1.0, opt);
        double e = 0.0;
        for (int j = 0; j < nz; ++j)
            for (int i = 0; i < g.Nx; ++i) e = std::max(e, std::abs(s.theta(i, j) - exact(g.y(i), g.z(j), 0.0)));
        return e;
    };
    const double s1 = steady(33), s2 = steady(65), s3 = steady(129);
    CHECK(std::log2(s1 / s2) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(std::log2(s2 / s3) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("subcritical layer decays and w stays mean free") {
    const Grid g = make_grid(5.0, 10.0, 32, 65);
    const ThermalStepper stepper(g);
    SimState s = stepper.init_state("perturbed", 0.1, 7);
    double prev = s.theta.max_abs();
    for (int n = 1; n <= 400; ++n) {
        s = stepper.step(s, cfl_dt(s, 0.2, 0.05));
        if (n > 40 && n % 40 == 0) {
            const double cur = s.theta.max_abs();
            CHECK(cur < prev);
            prev = cur;
        }
        if (n % 100 == 0)
            for (double m : horizontal_mean(s.u.w)) CHECK(std::abs(m) <= 1e-12);
    }
    CHECK(all_finite(s));
}

TEST_CASE("maximum principle monitor detects violations") {
    const Grid g = make_grid(5.0, 10.0, 16, 33);
    const ThermalStepper stepper(g);
    SimState s = stepper.init_state("conduction", 0.0, 1);
    s.theta(3, 10) = 2.0;
    const auto mp = max_principle_monitor(s);
    CHECK(mp.violation == doctest::Approx(2.0 + 1.0 - g.z(10) / g.H - 1.0));
}
