#include "inertphase/run.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "inertphase/errors.hpp"
#include "inertphase/field.hpp"

namespace inertphase {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); }
std::string fmt_opt(const std::optional<bool>& v) {
    if (!v) return {};
    return *v ? "true" : "false";
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
        : out_(path), columns_(header.size()) {
        if (!out_) {
            throw std::filesystem::filesystem_error(
                "cannot write output", path, std::make_error_code(std::errc::permission_denied));
        }
        row(header);
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_) throw std::logic_error("csv: column count mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
    std::size_t columns_;
};

QuadratureSpec quadrature_spec(const Scenario& s) {
    return {s.method, TimeGrid(s.grid.t_start_s, s.grid.t_end_s, s.grid.n_steps), s.rel_tol};
}

FieldModel field_model(const FieldConfig& f) { return FieldModel(f.profile, f.direction); }

NeutronState neutron_state(const Scenario& s, const FieldModel& field) {
    const NeutronConfig n = s.neutron.value_or(NeutronConfig{});
    return make_neutron(field, n.velocity_m_per_s, n.spin_sign, n.mass_kg, n.moment_magnitude_j_per_t);
}

RingDevice ring_device(const Scenario& s, const FieldModel& field) {
    const RingConfig& g = s.ring.value();
    RingDevice ring;
    ring.radius_m = g.radius_m;
    ring.device_mass_kg = g.device_mass_kg;
    ring.fluid_mass_kg = g.fluid_mass_kg;
    ring.axial_velocity_m_per_s = g.axial_velocity_m_per_s;
    ring.fluid_speed_m_per_s = g.fluid_speed_m_per_s;
    ring.center = g.center_m;
    ring.axis = g.axis;
    ring.current_a = g.current_a ? *g.current_a
                                 : matched_ring_current(neutron_state(s, field), g.radius_m, g.axis);
    return ring;
}

void write_neutron_csv(const std::filesystem::path& path, const NeutronState& state,
                       const FieldModel& field, const TimeGrid& grid) {
    const auto lagrangian = [&](double t, double) { return neutron_lagrangian(state, field, t); };
    const auto cumulative = step_ode(0.0, lagrangian, grid);
    CsvWriter csv(path, neutron_csv_columns());
    const double kinetic = state.kinetic_energy();
    for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
        const double t = grid.time_at(i);
        const double b = dot(field.direction(), field_at(field, t));
        const double magnetic = dot(state.moment, field_at(field, t));
        csv.row({fmt_double(t), fmt_double(b), fmt_double(kinetic + magnetic), fmt_double(kinetic),
                 fmt_double(magnetic), fmt_double(cumulative[i])});
    }
}

void write_ring_csv(const std::filesystem::path& path, const RingRunResult& result) {
    CsvWriter csv(path, ring_csv_columns());
    for (const auto& s : result.samples) {
        csv.row({fmt_double(s.t), fmt_double(s.field_t), fmt_double(s.v_perp), fmt_double(s.kinetic_fluid),
                 fmt_double(s.interaction), fmt_double(s.lagrangian_total),
                 fmt_double(s.cumulative_action)});
    }
}

void fill_quantum(RunSummary& out, const PathResult& on, const PathResult& off, double visibility) {
    out.kinetic_action = on.kinetic_action;
    out.magnetic_action = on.magnetic_action;
    out.action = on.action;
    out.phase_shift = phase_shift(on, off);
    out.delta_s_quantum = (on.kinetic_action - off.kinetic_action) + (on.magnetic_action - off.magnetic_action);
    out.fringe_intensity = fringe_intensity(*out.phase_shift, visibility);
}

void fill_classical(RunSummary& out, const RingRunResult& on, const RingRunResult& off,
                    double invariance_tol) {
    out.kinetic_initial = on.kinetic_initial;
    out.kinetic_final = on.samples.back().kinetic_fluid;
    out.lagrangian_initial = on.lagrangian_initial;
    out.max_relative_lagrangian_deviation = on.max_relative_lagrangian_deviation();
    out.s_classical = on.action;
    out.delta_s_classical = on.action - off.action;
    out.classical_invariant = std::abs(*out.delta_s_classical) <= invariance_tol * std::abs(on.action);
}

SweepRow run_sweep_point(const Scenario& s, const SubRun& sub, const QuadratureSpec& spec) {
    const FieldModel field = field_model(sub.field);
    const NeutronState state = neutron_state(s, field);
    const PathResult on = accumulate_action(state, field, spec);
    const PathResult off = accumulate_action(state, field.with_amplitude(0.0), spec);
    SweepRow row;
    row.run_id = sub.id;
    row.parameter_value = sub.parameter_value;
    row.pulse_area = sub.field.profile.area(spec.grid.t_start(), spec.grid.t_end());
    row.magnetic_action = on.magnetic_action;
    row.phase_shift = phase_shift(on, off);
    row.fringe_intensity = fringe_intensity(row.phase_shift, s.visibility);
    return row;
}

std::vector<SweepRow> run_sweep(const Scenario& s, const QuadratureSpec& spec, std::size_t workers) {
    const std::size_t n = s.sub_runs.size();
    std::vector<SweepRow> rows(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                rows[i] = run_sweep_point(s, s.sub_runs[i], spec);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();
    for (std::size_t i = 0; i < n; ++i) {
        if (!errors[i]) continue;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const Error& e) {
            // Keep the error category, prefix the sub-run id.
            const std::string msg = s.sub_runs[i].id + ": " + e.what();
            if (dynamic_cast<const ConvergenceError*>(&e)) throw ConvergenceError(msg);
            if (dynamic_cast<const PhysicalValidityError*>(&e)) throw PhysicalValidityError(msg);
            if (dynamic_cast<const NumericalError*>(&e)) throw NumericalError(msg);
            if (dynamic_cast<const ConfigError*>(&e)) throw ConfigError(msg);
            throw;
        }
    }
    return rows;
}

void write_summary_csv(const std::filesystem::path& path, const RunSummary& r) {
    CsvWriter csv(path, summary_csv_columns());
    csv.row({r.scenario_id, std::string(to_string(r.kind)), fmt_opt(r.pulse_area),
             fmt_opt(r.kinetic_action), fmt_opt(r.magnetic_action), fmt_opt(r.action),
             fmt_opt(r.delta_s_quantum), fmt_opt(r.phase_shift), fmt_opt(r.fringe_intensity),
             fmt_opt(r.kinetic_initial), fmt_opt(r.kinetic_final), fmt_opt(r.lagrangian_initial),
             fmt_opt(r.max_relative_lagrangian_deviation), fmt_opt(r.s_classical),
             fmt_opt(r.delta_s_classical), fmt_opt(r.quantum_depends), fmt_opt(r.classical_invariant),
             fmt_opt(r.fitted_slope), fmt_opt(r.expected_slope), fmt_double(r.wall_time_s)});
}

template <class Fn>
auto with_id(const std::string& id, Fn&& fn) {
    try {
        return fn();
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(id + ": " + e.what());
    } catch (const PhysicalValidityError& e) {
        throw PhysicalValidityError(id + ": " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(id + ": " + e.what());
    }
}

}  // namespace

const std::vector<std::string>& neutron_csv_columns() {
    static const std::vector<std::string> cols = {"t_s", "b_t", "lagrangian_j", "kinetic_j", "magnetic_j",
                                                  "cumulative_action_js"};
    return cols;
}

const std::vector<std::string>& ring_csv_columns() {
    static const std::vector<std::string> cols = {"t_s", "b_t", "v_perp_m_per_s", "kinetic_fluid_j",
                                                  "interaction_j", "lagrangian_j", "cumulative_action_js"};
    return cols;
}

const std::vector<std::string>& sweep_csv_columns() {
    static const std::vector<std::string> cols = {"run_id", "parameter", "parameter_value", "pulse_area_ts",
                                                  "magnetic_action_js", "delta_phi_rad", "fringe_intensity"};
    return cols;
}

const std::vector<std::string>& summary_csv_columns() {
    static const std::vector<std::string> cols = {
        "scenario_id", "kind", "pulse_area_ts", "kinetic_action_js", "magnetic_action_js", "action_js",
        "delta_s_quantum_js", "delta_phi_rad", "fringe_intensity", "kinetic_fluid_initial_j",
        "kinetic_fluid_final_j", "lagrangian_initial_j", "max_rel_lagrangian_deviation", "s_classical_js",
        "delta_s_classical_js", "quantum_depends", "classical_invariant", "fitted_slope_rad_per_ts",
        "expected_slope_rad_per_ts", "wall_time_s"};
    return cols;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("fit_slope: need at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (!(sxx > 0.0)) throw ConfigError("fit_slope: abscissae are all equal");
    return sxy / sxx;
}

RunSummary run(const Scenario& s, const RunOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    const QuadratureSpec spec = quadrature_spec(s);
    const std::filesystem::path out_dir = options.out_dir.value_or(s.output_dir);
    if (options.write_files) std::filesystem::create_directories(out_dir);
    const auto out_path = [&](const std::string& suffix) { return out_dir / (s.id + suffix); };
    const CompareOptions compare_options;

    RunSummary out;
    out.scenario_id = s.id;
    out.kind = s.kind;

    with_id(s.id, [&] {
        switch (s.kind) {
            case ScenarioKind::neutron: {
                const FieldModel field = field_model(s.field);
                const NeutronState state = neutron_state(s, field);
                const PathResult on = accumulate_action(state, field, spec);
                const PathResult off = accumulate_action(state, field.with_amplitude(0.0), spec);
                out.pulse_area = field.profile().area(spec.grid.t_start(), spec.grid.t_end());
                fill_quantum(out, on, off, s.visibility);
                out.quantum_depends = std::abs(*out.phase_shift) > compare_options.phase_resolution_rad;
                if (options.write_files) {
                    write_neutron_csv(out_path("_neutron.csv"), state, field, spec.grid);
                    out.outputs.push_back(out_path("_neutron.csv"));
                }
                break;
            }
            case ScenarioKind::ring: {
                const FieldModel field = field_model(s.field);
                const RingDevice ring = ring_device(s, field);
                const RingRunResult on = evolve_fluid_energy(ring, field, spec.grid);
                const RingRunResult off = evolve_fluid_energy(ring, field.with_amplitude(0.0), spec.grid);
                out.pulse_area = field.profile().area(spec.grid.t_start(), spec.grid.t_end());
                fill_classical(out, on, off, compare_options.invariance_tol);
                if (options.write_files) {
                    write_ring_csv(out_path("_ring.csv"), on);
                    out.outputs.push_back(out_path("_ring.csv"));
                }
                break;
            }
            case ScenarioKind::compare: {
                const FieldModel field = field_model(s.field);
                const NeutronState state = neutron_state(s, field);
                const RingDevice ring = ring_device(s, field);
                const ComparisonReport rep = compare_quantum_classical(state, ring, field, spec, compare_options);
                out.pulse_area = rep.pulse_area;
                fill_quantum(out, rep.neutron_on, rep.neutron_off, s.visibility);
                fill_classical(out, rep.ring_on, rep.ring_off, compare_options.invariance_tol);
                out.quantum_depends = rep.quantum_depends;
                out.classical_invariant = rep.classical_invariant;
                if (options.write_files) {
                    write_neutron_csv(out_path("_neutron.csv"), state, field, spec.grid);
                    write_ring_csv(out_path("_ring.csv"), rep.ring_on);
                    out.outputs.push_back(out_path("_neutron.csv"));
                    out.outputs.push_back(out_path("_ring.csv"));
                }
                break;
            }
            case ScenarioKind::sweep: {
                out.sweep_rows = run_sweep(s, spec, options.workers.value_or(s.workers));
                const FieldModel field = field_model(s.field);
                out.expected_slope = dot(neutron_state(s, field).moment, field.direction()) / constants::hbar;
                if (out.sweep_rows.size() >= 2) {
                    std::vector<double> xs;
                    std::vector<double> ys;
                    for (const auto& r : out.sweep_rows) {
                        xs.push_back(r.pulse_area);
                        ys.push_back(r.phase_shift);
                    }
                    try {
                        out.fitted_slope = fit_slope(xs, ys);
                    } catch (const ConfigError&) {
                        // Degenerate sweep (all areas equal): no slope to report.
                    }
                }
                if (options.write_files) {
                    CsvWriter csv(out_path("_sweep.csv"), sweep_csv_columns());
                    for (const auto& r : out.sweep_rows) {
                        csv.row({r.run_id, s.sweep->parameter, fmt_double(r.parameter_value),
                                 fmt_double(r.pulse_area), fmt_double(r.magnetic_action),
                                 fmt_double(r.phase_shift), fmt_double(r.fringe_intensity)});
                    }
                    out.outputs.push_back(out_path("_sweep.csv"));
                }
                break;
            }
        }
        return 0;
    });

    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (options.write_files) {
        write_summary_csv(out_path("_summary.csv"), out);
        out.outputs.push_back(out_path("_summary.csv"));
    }
    return out;
}

std::string format_summary(const RunSummary& r) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "scenario " << r.scenario_id << " (" << to_string(r.kind) << ")\n";
    const auto line = [&](const char* label, const auto& v, const char* unit) {
        if (v) os << "  " << std::left << std::setw(34) << label << *v << unit << "\n";
    };
    line("pulse area", r.pulse_area, " T s");
    line("kinetic action", r.kinetic_action, " J s");
    line("magnetic action", r.magnetic_action, " J s");
    line("action", r.action, " J s");
    line("delta S (quantum)", r.delta_s_quantum, " J s");
    line("phase shift", r.phase_shift, " rad");
    line("fringe intensity", r.fringe_intensity, "");
    line("fluid KE at T_0", r.kinetic_initial, " J");
    line("fluid KE at end", r.kinetic_final, " J");
    line("classical L(T_0)", r.lagrangian_initial, " J");
    line("max |L(t)-L(T_0)|/|L(T_0)|", r.max_relative_lagrangian_deviation, "");
    line("classical action", r.s_classical, " J s");
    line("delta S (classical)", r.delta_s_classical, " J s");
    if (r.quantum_depends) os << "  quantum action depends on field:  " << (*r.quantum_depends ? "yes" : "no") << "\n";
    if (r.classical_invariant) {
        os << "  classical action field-invariant: " << (*r.classical_invariant ? "yes" : "no") << "\n";
    }
    if (!r.sweep_rows.empty()) os << "  sweep points                      " << r.sweep_rows.size() << "\n";
    line("fitted slope dphi/d(area)", r.fitted_slope, " rad/(T s)");
    line("expected slope mu_z/hbar", r.expected_slope, " rad/(T s)");
    os << "  wall time                         " << r.wall_time_s << " s\n";
    return os.str();
}

}  // namespace inertphase
