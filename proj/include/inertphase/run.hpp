#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inertphase/compare.hpp"
#include "inertphase/scenario.hpp"

namespace inertphase {

struct SweepRow {
    std::string run_id;
    double parameter_value = 0.0;
    double pulse_area = 0.0;
    double magnetic_action = 0.0;
    double phase_shift = 0.0;
    double fringe_intensity = 0.0;
};

// Fields that do not apply to the scenario kind stay empty.
struct RunSummary {
    std::string scenario_id;
    ScenarioKind kind = ScenarioKind::neutron;

    std::optional<double> pulse_area;
    std::optional<double> kinetic_action;
    std::optional<double> magnetic_action;
    std::optional<double> action;
    std::optional<double> delta_s_quantum;
    std::optional<double> phase_shift;
    std::optional<double> fringe_intensity;

    std::optional<double> kinetic_initial;
    std::optional<double> kinetic_final;
    std::optional<double> lagrangian_initial;
    std::optional<double> max_relative_lagrangian_deviation;
    std::optional<double> s_classical;
    std::optional<double> delta_s_classical;

    std::optional<bool> quantum_depends;
    std::optional<bool> classical_invariant;

    std::vector<SweepRow> sweep_rows;
    std::optional<double> fitted_slope;    // rad per T·s
    std::optional<double> expected_slope;  // mu_z / hbar

    double wall_time_s = 0.0;
    std::vector<std::filesystem::path> outputs;
};

struct RunOptions {
    // Overrides Scenario::output_dir when set.
    std::optional<std::filesystem::path> out_dir;
    // Overrides Scenario::workers when set (sweeps only).
    std::optional<std::size_t> workers;
    bool write_files = true;
};

RunSummary run(const Scenario& scenario, const RunOptions& options = {});

// Least-squares slope of y against x (with intercept).
double fit_slope(std::span<const double> x, std::span<const double> y);

// Human-readable multi-line summary.
std::string format_summary(const RunSummary& summary);

// Column headers of the CSV files, fixed per file type.
const std::vector<std::string>& neutron_csv_columns();
const std::vector<std::string>& ring_csv_columns();
const std::vector<std::string>& sweep_csv_columns();
const std::vector<std::string>& summary_csv_columns();

}  // namespace inertphase
