#pragma once

#include <cstddef>
#include <vector>

#include "inertphase/field.hpp"
#include "inertphase/integrators.hpp"
#include "inertphase/time_grid.hpp"
#include "inertphase/vec3.hpp"

namespace inertphase {

// Insulating ring pipe carrying a frictionless charged fluid; the
// insulator's opposite charge makes the device neutral overall, so no
// monopole field is modelled. The current is held fixed (constant-current
// approximation); the field's back-reaction shows up only in fluid_speed.
struct RingDevice {
    double radius_m = 0.0;
    double current_a = 0.0;
    double device_mass_kg = 0.0;  // M, whole device
    double fluid_mass_kg = 0.0;   // m_f, rotating fluid
    double axial_velocity_m_per_s = 0.0;
    double fluid_speed_m_per_s = 0.0;  // v_perp at T_0
    Vec3 center;
    Vec3 axis = unit_z;

    // a > 0, M >= m_f > 0, finite I, unit axis.
    void validate() const;

    double kinetic_fluid_initial() const noexcept {
        return 0.5 * fluid_mass_kg * fluid_speed_m_per_s * fluid_speed_m_per_s;
    }
    double kinetic_axial() const noexcept {
        return 0.5 * device_mass_kg * axial_velocity_m_per_s * axial_velocity_m_per_s;
    }
};

// mu = pi a^2 I axis.
Vec3 ring_moment(const RingDevice& ring);

// I ∮ A·dl with A in the symmetric gauge (plus an optional constant gauge
// gradient), by midpoint quadrature over n_segments.
double interaction_line_integral(const RingDevice& ring, const FieldModel& field, double t,
                                 std::size_t n_segments, const Vec3& gauge_gradient = {});

// mu·B(t).
double interaction_analytic(const RingDevice& ring, const FieldModel& field, double t);

// P = -I pi a^2 axis·dB/dt, the EMF power delivered to the fluid.
double induced_power(const RingDevice& ring, const FieldModel& field, double t);

// L = M v_z^2 / 2 + kinetic_fluid + mu·B(t).
double classical_lagrangian(const RingDevice& ring, double kinetic_fluid, const FieldModel& field,
                            double t);

struct RingSample {
    double t = 0.0;
    double field_t = 0.0;  // axis·B
    double v_perp = 0.0;
    double kinetic_fluid = 0.0;
    double interaction = 0.0;
    double lagrangian_total = 0.0;
    double cumulative_action = 0.0;
};

struct RingRunResult {
    std::vector<RingSample> samples;
    double kinetic_initial = 0.0;
    double lagrangian_initial = 0.0;
    double action = 0.0;  // ∫ L dt over the run
    ConvergenceReport kinetic_report;

    double max_relative_lagrangian_deviation() const;
};

struct EvolveOptions {
    // Step-halving check on kinetic_fluid, relative to its initial value.
    double rel_tol = 1e-9;
};

// Integrates d(kinetic_fluid)/dt = induced_power with RK4 on the grid,
// together with the classical action. Requires B(t_start) = 0; throws
// PhysicalValidityError if the fluid would stall.
RingRunResult evolve_fluid_energy(const RingDevice& ring, const FieldModel& field,
                                  const TimeGrid& grid, const EvolveOptions& options = {});

}  // namespace inertphase
