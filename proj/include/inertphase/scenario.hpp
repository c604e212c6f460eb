#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inertphase/constants.hpp"
#include "inertphase/integrators.hpp"
#include "inertphase/pulse.hpp"
#include "inertphase/vec3.hpp"

namespace inertphase {

enum class ScenarioKind { neutron, ring, compare, sweep };

std::string_view to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(std::string_view name);

struct GridConfig {
    double t_start_s = 0.0;
    double t_end_s = 0.0;
    std::size_t n_steps = 4096;

    friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct FieldConfig {
    PulseProfile profile = PulseProfile::constant(0.0);
    Vec3 direction = unit_z;
    Vec3 gradient_t_per_m;
    // Length over which the gradient is judged (beam / device size).
    double length_scale_m = 0.01;
    double uniformity_rel_tol = 1e-6;

    friend bool operator==(const FieldConfig&, const FieldConfig&) = default;
};

struct NeutronConfig {
    double mass_kg = constants::neutron_mass;
    double moment_magnitude_j_per_t = constants::neutron_moment_magnitude;
    Vec3 velocity_m_per_s{0.0, 0.0, 2200.0};
    int spin_sign = 1;

    friend bool operator==(const NeutronConfig&, const NeutronConfig&) = default;
};

struct RingConfig {
    double radius_m = 0.0;
    // Absent in a compare scenario: matched to the neutron moment.
    std::optional<double> current_a;
    double device_mass_kg = 0.0;
    double fluid_mass_kg = 0.0;
    double axial_velocity_m_per_s = 0.0;
    double fluid_speed_m_per_s = 0.0;
    Vec3 center_m;
    Vec3 axis = unit_z;
    std::size_t n_segments = 1024;

    friend bool operator==(const RingConfig&, const RingConfig&) = default;
};

struct SweepConfig {
    // One of bmax_t, t_on_s, ramp_s, width_s, flat_s.
    std::string parameter;
    std::vector<double> values;

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct SubRun {
    std::string id;
    double parameter_value = 0.0;
    FieldConfig field;

    friend bool operator==(const SubRun&, const SubRun&) = default;
};

struct Scenario {
    std::string id;
    ScenarioKind kind = ScenarioKind::neutron;
    GridConfig grid;
    QuadratureMethod method = QuadratureMethod::simpson;
    double rel_tol = 1e-9;
    FieldConfig field;
    std::optional<NeutronConfig> neutron;
    std::optional<RingConfig> ring;
    std::optional<SweepConfig> sweep;
    double visibility = 1.0;
    std::string output_dir = ".";
    std::size_t workers = 1;

    // Materialized sweep points (empty for other kinds).
    std::vector<SubRun> sub_runs;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Parses and validates. Throws ParseError for malformed text or wrong value
// types, ConfigError listing every violated guard otherwise.
Scenario parse_scenario(std::string_view text, std::string_view default_id = "scenario");
Scenario load_scenario(const std::filesystem::path& path);

// Inverse of parse_scenario (every default written out explicitly).
std::string write_scenario(const Scenario& scenario);

// Process exit codes used by the CLI.
enum class ExitCode : int {
    ok = 0,
    parse = 2,
    validation = 3,
    convergence = 4,
    physical_validity = 5,
    numerical = 6,
    io = 7,
    usage = 64,
};

int exit_code_for(const std::exception& e) noexcept;

}  // namespace inertphase
