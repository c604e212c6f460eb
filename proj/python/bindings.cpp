#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "inertphase/compare.hpp"
#include "inertphase/constants.hpp"
#include "inertphase/errors.hpp"
#include "inertphase/field.hpp"
#include "inertphase/integrators.hpp"
#include "inertphase/neutron.hpp"
#include "inertphase/ring.hpp"
#include "inertphase/run.hpp"
#include "inertphase/scenario.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace inertphase;

namespace {

Vec3 to_vec3(const py::sequence& s) {
    if (py::len(s) != 3) throw py::value_error("expected a sequence of 3 numbers");
    return {s[0].cast<double>(), s[1].cast<double>(), s[2].cast<double>()};
}

py::dict summary_dict(const RunSummary& r) {
    py::dict d;
    d["scenario_id"] = r.scenario_id;
    d["kind"] = std::string(to_string(r.kind));
    const auto put = [&](const char* key, const auto& v) {
        if (v) d[key] = *v;
        else d[key] = py::none();
    };
    put("pulse_area", r.pulse_area);
    put("kinetic_action", r.kinetic_action);
    put("magnetic_action", r.magnetic_action);
    put("action", r.action);
    put("delta_s_quantum", r.delta_s_quantum);
    put("phase_shift", r.phase_shift);
    put("fringe_intensity", r.fringe_intensity);
    put("kinetic_initial", r.kinetic_initial);
    put("kinetic_final", r.kinetic_final);
    put("lagrangian_initial", r.lagrangian_initial);
    put("max_relative_lagrangian_deviation", r.max_relative_lagrangian_deviation);
    put("s_classical", r.s_classical);
    put("delta_s_classical", r.delta_s_classical);
    put("quantum_depends", r.quantum_depends);
    put("classical_invariant", r.classical_invariant);
    put("fitted_slope", r.fitted_slope);
    put("expected_slope", r.expected_slope);
    py::list rows;
    for (const auto& s : r.sweep_rows) {
        py::dict row;
        row["run_id"] = s.run_id;
        row["parameter_value"] = s.parameter_value;
        row["pulse_area"] = s.pulse_area;
        row["magnetic_action"] = s.magnetic_action;
        row["phase_shift"] = s.phase_shift;
        row["fringe_intensity"] = s.fringe_intensity;
        rows.append(row);
    }
    d["sweep_rows"] = rows;
    d["wall_time_s"] = r.wall_time_s;
    py::list outputs;
    for (const auto& p : r.outputs) outputs.append(p.string());
    d["outputs"] = outputs;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Neutron action/phase and the classical current-loop analog in a uniform, time-dependent field.";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<PhysicalValidityError>(m, "PhysicalValidityError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    py::module_ c = m.def_submodule("constants", "SI constants");
    c.attr("hbar") = constants::hbar;
    c.attr("neutron_mass") = constants::neutron_mass;
    c.attr("neutron_moment_magnitude") = constants::neutron_moment_magnitude;
    c.attr("speed_of_light") = constants::speed_of_light;

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<>())
        .def(py::init([](double x, double y, double z) { return Vec3{x, y, z}; }))
        .def(py::init(&to_vec3))
        .def_readwrite("x", &Vec3::x)
        .def_readwrite("y", &Vec3::y)
        .def_readwrite("z", &Vec3::z)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * double())
        .def(double() * py::self)
        .def(py::self == py::self)
        .def("__iter__", [](const Vec3& v) { return py::iter(py::make_tuple(v.x, v.y, v.z)); })
        .def("__repr__", [](const Vec3& v) {
            return "Vec3(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " + std::to_string(v.z) + ")";
        });
    py::implicitly_convertible<py::sequence, Vec3>();
    m.def("dot", &dot);
    m.def("cross", &cross);

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init<double, double, std::size_t>(), py::arg("t_start"), py::arg("t_end"), py::arg("n_steps"))
        .def_property_readonly("t_start", &TimeGrid::t_start)
        .def_property_readonly("t_end", &TimeGrid::t_end)
        .def_property_readonly("n_steps", &TimeGrid::n_steps)
        .def_property_readonly("dt", &TimeGrid::dt)
        .def("time_at", &TimeGrid::time_at);

    py::enum_<PulseKind>(m, "PulseKind")
        .value("constant", PulseKind::constant)
        .value("linear_ramp", PulseKind::linear_ramp)
        .value("raised_cosine", PulseKind::raised_cosine)
        .value("smoothed_rectangle", PulseKind::smoothed_rectangle);

    py::class_<PulseProfile>(m, "PulseProfile")
        .def_static("constant", &PulseProfile::constant, py::arg("amplitude_t"))
        .def_static("linear_ramp", &PulseProfile::linear_ramp, py::arg("amplitude_t"), py::arg("t_on_s"),
                    py::arg("ramp_s"))
        .def_static("raised_cosine", &PulseProfile::raised_cosine, py::arg("amplitude_t"), py::arg("t_on_s"),
                    py::arg("width_s"))
        .def_static("smoothed_rectangle", &PulseProfile::smoothed_rectangle, py::arg("amplitude_t"),
                    py::arg("t_on_s"), py::arg("ramp_s"), py::arg("flat_s"))
        .def_property_readonly("kind", &PulseProfile::kind)
        .def_property_readonly("amplitude", &PulseProfile::amplitude)
        .def("value", &PulseProfile::value)
        .def("rate", &PulseProfile::rate)
        .def("area", &PulseProfile::area)
        .def("breakpoints", &PulseProfile::breakpoints)
        .def("with_amplitude", &PulseProfile::with_amplitude);

    py::class_<FieldModel>(m, "FieldModel")
        .def(py::init<PulseProfile, Vec3>(), py::arg("profile"), py::arg("direction") = unit_z)
        .def_property_readonly("profile", &FieldModel::profile)
        .def_property_readonly("direction", &FieldModel::direction)
        .def("with_amplitude", &FieldModel::with_amplitude);
    m.def("field_at", &field_at);
    m.def("field_rate_at", &field_rate_at);
    m.def("vector_potential_at", &vector_potential_at, py::arg("model"), py::arg("r"), py::arg("t"),
          py::arg("gauge_gradient") = Vec3{});

    py::enum_<QuadratureMethod>(m, "QuadratureMethod")
        .value("trapezoid", QuadratureMethod::trapezoid)
        .value("simpson", QuadratureMethod::simpson);
    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init([](QuadratureMethod method, const TimeGrid& grid, double rel_tol) {
                 return QuadratureSpec{method, grid, rel_tol};
             }),
             py::arg("method"), py::arg("grid"), py::arg("rel_tol") = 1e-9)
        .def_readwrite("method", &QuadratureSpec::method)
        .def_readwrite("grid", &QuadratureSpec::grid)
        .def_readwrite("rel_tol", &QuadratureSpec::rel_tol);
    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("coarse", &ConvergenceReport::coarse)
        .def_readonly("fine", &ConvergenceReport::fine)
        .def_readonly("extrapolated", &ConvergenceReport::extrapolated)
        .def_readonly("order", &ConvergenceReport::order)
        .def_readonly("error_estimate", &ConvergenceReport::error_estimate);
    m.def("integrate_time", [](const ScalarFunction& f, const QuadratureSpec& spec) {
        const QuadratureResult r = integrate_time(f, spec);
        return py::make_tuple(r.value, r.report);
    });
    m.def("step_ode", [](double y0, const std::function<double(double, double)>& rhs, const TimeGrid& grid) {
        return step_ode(y0, rhs, grid);
    });
    m.def("loop_quadrature", &loop_quadrature, py::arg("g"), py::arg("radius"), py::arg("center"),
          py::arg("axis"), py::arg("n_segments"));

    py::class_<NeutronState>(m, "NeutronState")
        .def_readonly("mass_kg", &NeutronState::mass_kg)
        .def_readonly("moment", &NeutronState::moment)
        .def_readonly("velocity", &NeutronState::velocity)
        .def_readonly("spin_sign", &NeutronState::spin_sign)
        .def("kinetic_energy", &NeutronState::kinetic_energy);
    m.def("make_neutron", &make_neutron, py::arg("field"), py::arg("velocity"), py::arg("spin_sign") = 1,
          py::arg("mass_kg") = constants::neutron_mass,
          py::arg("moment_magnitude") = constants::neutron_moment_magnitude);
    py::class_<PathResult>(m, "PathResult")
        .def_readonly("action", &PathResult::action)
        .def_readonly("kinetic_action", &PathResult::kinetic_action)
        .def_readonly("magnetic_action", &PathResult::magnetic_action)
        .def_readonly("magnetic_report", &PathResult::magnetic_report)
        .def_property_readonly("samples", [](const PathResult& p) {
            py::list out;
            for (const auto& s : p.samples) out.append(py::make_tuple(s.t, s.lagrangian));
            return out;
        });
    m.def("neutron_lagrangian", &neutron_lagrangian);
    m.def("accumulate_action", &accumulate_action);
    m.def("phase_shift", &phase_shift);
    m.def("fringe_intensity", &fringe_intensity, py::arg("phase"), py::arg("visibility") = 1.0);

    py::class_<RingDevice>(m, "RingDevice")
        .def(py::init<>())
        .def_readwrite("radius_m", &RingDevice::radius_m)
        .def_readwrite("current_a", &RingDevice::current_a)
        .def_readwrite("device_mass_kg", &RingDevice::device_mass_kg)
        .def_readwrite("fluid_mass_kg", &RingDevice::fluid_mass_kg)
        .def_readwrite("axial_velocity_m_per_s", &RingDevice::axial_velocity_m_per_s)
        .def_readwrite("fluid_speed_m_per_s", &RingDevice::fluid_speed_m_per_s)
        .def_readwrite("center", &RingDevice::center)
        .def_readwrite("axis", &RingDevice::axis)
        .def("validate", &RingDevice::validate);
    py::class_<RingSample>(m, "RingSample")
        .def_readonly("t", &RingSample::t)
        .def_readonly("field_t", &RingSample::field_t)
        .def_readonly("v_perp", &RingSample::v_perp)
        .def_readonly("kinetic_fluid", &RingSample::kinetic_fluid)
        .def_readonly("interaction", &RingSample::interaction)
        .def_readonly("lagrangian_total", &RingSample::lagrangian_total)
        .def_readonly("cumulative_action", &RingSample::cumulative_action);
    py::class_<RingRunResult>(m, "RingRunResult")
        .def_readonly("samples", &RingRunResult::samples)
        .def_readonly("kinetic_initial", &RingRunResult::kinetic_initial)
        .def_readonly("lagrangian_initial", &RingRunResult::lagrangian_initial)
        .def_readonly("action", &RingRunResult::action)
        .def("max_relative_lagrangian_deviation", &RingRunResult::max_relative_lagrangian_deviation);
    m.def("ring_moment", &ring_moment);
    m.def("interaction_line_integral", &interaction_line_integral, py::arg("ring"), py::arg("field"), py::arg("t"),
          py::arg("n_segments") = 1024, py::arg("gauge_gradient") = Vec3{});
    m.def("interaction_analytic", &interaction_analytic);
    m.def("induced_power", &induced_power);
    m.def("classical_lagrangian", &classical_lagrangian);
    m.def("evolve_fluid_energy", [](const RingDevice& ring, const FieldModel& field, const TimeGrid& grid,
                                    double rel_tol) { return evolve_fluid_energy(ring, field, grid, {rel_tol}); },
          py::arg("ring"), py::arg("field"), py::arg("grid"), py::arg("rel_tol") = 1e-9);

    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_readonly("pulse_area", &ComparisonReport::pulse_area)
        .def_readonly("delta_s_quantum", &ComparisonReport::delta_s_quantum)
        .def_readonly("phase_shift", &ComparisonReport::phase_shift)
        .def_readonly("s_classical", &ComparisonReport::s_classical)
        .def_readonly("delta_s_classical", &ComparisonReport::delta_s_classical)
        .def_readonly("quantum_depends", &ComparisonReport::quantum_depends)
        .def_readonly("classical_invariant", &ComparisonReport::classical_invariant);
    m.def("matched_ring_current", &matched_ring_current);
    m.def("compare_quantum_classical",
          [](const NeutronState& n, const RingDevice& r, const FieldModel& f, const QuadratureSpec& spec) {
              return compare_quantum_classical(n, r, f, spec);
          });

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("id", &Scenario::id)
        .def_property_readonly("kind", [](const Scenario& s) { return std::string(to_string(s.kind)); })
        .def_property_readonly("n_sub_runs", [](const Scenario& s) { return s.sub_runs.size(); })
        .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });
    m.def("load_scenario", [](const std::filesystem::path& p) { return load_scenario(p); });
    m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); });
    m.def("write_scenario", &write_scenario);
    m.def(
        "run",
        [](const Scenario& s, std::optional<std::filesystem::path> out_dir, std::optional<std::size_t> workers) {
            RunOptions opts;
            opts.out_dir = out_dir;
            opts.workers = workers;
            opts.write_files = out_dir.has_value();
            RunSummary r;
            {
                py::gil_scoped_release release;
                r = run(s, opts);
            }
            return summary_dict(r);
        },
        py::arg("scenario"), py::arg("out_dir") = py::none(), py::arg("workers") = py::none(),
        "Run a scenario; CSV files are written only when out_dir is given.");

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
