#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rbc/checkpoint.hpp"
#include "rbc/diagnostics.hpp"
#include "rbc/littlewood_paley.hpp"
#include "rbc/runner.hpp"
#include "rbc/suites.hpp"
#include "rbc/thermal.hpp"

namespace py = pybind11;
using namespace rbc;

namespace {

// (Nz, Nx) copy of a channel field.
py::array_t<double> to_numpy(const PhysicalField& f) {
    py::array_t<double> a({f.grid.Nz, f.grid.Nx});
    std::copy(f.data.begin(), f.data.end(), a.mutable_data());
    return a;
}

PhysicalField from_numpy(const Grid& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2 || a.shape(0) != g.Nz || a.shape(1) != g.Nx)
        throw std::invalid_argument("expected an array of shape (Nz, Nx)");
    PhysicalField f(g);
    std::copy(a.data(), a.data() + f.data.size(), f.data.begin());
    return f;
}

py::dict inequality_dict(const InequalityResult& r) {
    py::dict d;
    d["name"] = r.name;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["constant_used"] = r.constant_used;
    d["pass"] = r.pass;
    d["witness"] = r.witness;
    return d;
}

py::dict functional_dict(const FunctionalReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["value"] = r.value;
    d["comparator"] = r.comparator;
    d["ratio"] = r.ratio;
    d["params"] = r.params;
    return d;
}

py::dict analysis_dict(const Analysis& a) {
    py::list f, q;
    for (const auto& r : a.functionals) f.append(functional_dict(r));
    for (const auto& r : a.inequalities) q.append(inequality_dict(r));
    py::dict d;
    d["functionals"] = f;
    d["inequalities"] = q;
    d["bands"] = a.bands;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Infinite-Prandtl Rayleigh-Benard solver and inequality checks";

    py::class_<Grid>(m, "Grid")
        .def_readonly("H", &Grid::H)
        .def_readonly("Lambda", &Grid::Lambda)
        .def_readonly("Nx", &Grid::Nx)
        .def_readonly("Nz", &Grid::Nz)
        .def_readonly("dz", &Grid::dz)
        .def_property_readonly("dy", &Grid::dy)
        .def("__repr__", [](const Grid& g) {
            return "Grid(H=" + std::to_string(g.H) + ", Lambda=" + std::to_string(g.Lambda) +
                   ", Nx=" + std::to_string(g.Nx) + ", Nz=" + std::to_string(g.Nz) + ")";
        });
    m.def("make_grid", &make_grid, py::arg("H"), py::arg("Lambda"), py::arg("Nx"), py::arg("Nz"));

    py::class_<SimState>(m, "State")
        .def_readonly("grid", &SimState::grid)
        .def_readonly("t", &SimState::t)
        .def_readonly("step", &SimState::step)
        .def_readonly("clip_count", &SimState::clip_count)
        .def_property_readonly("theta", [](const SimState& s) { return to_numpy(s.theta); })
        .def_property_readonly("v", [](const SimState& s) { return to_numpy(s.u.v); })
        .def_property_readonly("w", [](const SimState& s) { return to_numpy(s.u.w); })
        .def_property_readonly("T", [](const SimState& s) { return to_numpy(temperature(s)); });

    py::class_<ThermalStepper>(m, "Stepper")
        .def(py::init<const Grid&>())
        .def("init_state", &ThermalStepper::init_state, py::arg("kind") = "perturbed", py::arg("amplitude") = 0.1,
             py::arg("seed") = 1)
        .def(
            "make_state",
            [](const ThermalStepper& st, py::array_t<double, py::array::c_style | py::array::forcecast> theta, double t) {
                return st.make_state(from_numpy(st.grid(), theta), t);
            },
            py::arg("theta"), py::arg("t") = 0.0)
        .def("step", [](const ThermalStepper& st, const SimState& s, double dt) { return st.step(s, dt); })
        .def(
            "advance",
            [](const ThermalStepper& st, SimState s, double t_end, double cfl, double dt_max) {
                while (s.t < t_end) {
                    s = st.step(s, std::min(cfl_dt(s, cfl, dt_max), t_end - s.t));
                    check_finite(s);
                }
                return s;
            },
            py::arg("state"), py::arg("t_end"), py::arg("cfl") = 0.2, py::arg("dt_max") = 0.5);
    m.def("cfl_dt", &cfl_dt, py::arg("state"), py::arg("cfl") = 0.2, py::arg("dt_max") = 0.5);

    m.def("nusselt", [](const SimState& s) {
        const NusseltSnapshot n = nusselt_snapshot(s);
        py::dict d;
        d["flux_z0"] = n.flux_z0;
        d["flux_mid"] = n.flux_mid;
        d["gradient"] = n.grad;
        d["dissipation"] = n.diss;
        return d;
    });
    m.def("max_principle", [](const SimState& s) {
        const MaxPrinciple mp = max_principle_monitor(s);
        return py::make_tuple(mp.t_min, mp.t_max, mp.violation);
    });

    m.def("save_checkpoint", &save_checkpoint, py::arg("dir"), py::arg("state"));
    m.def("load_checkpoint", &load_checkpoint, py::arg("dir"));

    m.def("parse_config", [](const std::string& text) { return dump_config(parse_config(text)); },
          "Validates a JSON config and returns it with every default filled in.");
    m.def(
        "run",
        [](const std::string& config_json, bool write_outputs) {
            const RunSummary r = run_simulation(parse_config(config_json), write_outputs);
            py::dict d;
            d["final_state"] = r.final_state;
            d["steps"] = r.steps;
            d["nu_flux_z0"] = r.nu_flux_z0;
            d["nu_flux_mid"] = r.nu_flux_mid;
            d["nu_grad"] = r.nu_grad;
            d["nu_diss"] = r.nu_diss;
            d["linearity_sup"] = r.linearity_sup;
            d["sobolev"] = std::vector<double>(r.sobolev, r.sobolev + 4);
            d["analysis"] = analysis_dict(r.analysis);
            d["report_json"] = r.report_json;
            return d;
        },
        py::arg("config_json"), py::arg("write_outputs") = false);
    m.def(
        "analyze_checkpoint",
        [](const std::string& dir, const std::string& report) { return analysis_dict(analyze_checkpoint(dir, report)); },
        py::arg("dir"), py::arg("report"));

    m.def("suite_names", &suite_names);
    m.def(
        "run_suite",
        [](const std::string& tag, std::uint64_t seed) {
            py::list out;
            for (const auto& r : run_suite(tag, seed)) out.append(inequality_dict(r));
            return out;
        },
        py::arg("tag"), py::arg("seed") = 1);

    m.def("lp_ramp", &lp_ramp);
    m.def("lp_band", &lp_band, py::arg("q"), py::arg("ell"));
    m.def(
        "kernel_moments",
        [](int ell) {
            const KernelMoments k = kernel_moments(ell);
            py::dict d;
            d["l1"] = k.l1;
            d["moment"] = k.moment;
            d["grad_moment"] = k.grad_moment;
            d["tail_mass"] = k.tail_mass;
            return d;
        },
        py::arg("ell"));
}
