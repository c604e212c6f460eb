#pragma once

#include <vector>

#include "inertphase/constants.hpp"
#include "inertphase/field.hpp"
#include "inertphase/integrators.hpp"
#include "inertphase/time_grid.hpp"
#include "inertphase/vec3.hpp"

namespace inertphase {

// A neutron drifting at constant velocity. The moment is fixed at
// construction along +/- the field direction and never changes afterwards:
// the neutron stays in its ground state, so nothing internal responds to B.
struct NeutronState {
    double mass_kg = constants::neutron_mass;
    Vec3 moment;    // J/T
    Vec3 velocity;  // m/s
    int spin_sign = 1;

    double kinetic_energy() const noexcept { return 0.5 * mass_kg * norm2(velocity); }
};

// Validates m > 0, |v| < 0.01 c and spin_sign in {+1, -1}.
NeutronState make_neutron(const FieldModel& field, const Vec3& velocity, int spin_sign,
                          double mass_kg = constants::neutron_mass,
                          double moment_magnitude = constants::neutron_moment_magnitude);

struct LagrangianSample {
    double t = 0.0;
    double lagrangian = 0.0;
};

struct PathResult {
    double action = 0.0;           // J·s
    double kinetic_action = 0.0;   // J·s
    double magnetic_action = 0.0;  // J·s
    std::vector<LagrangianSample> samples;

    // Bookkeeping used by phase_shift to refuse incomparable paths.
    TimeGrid grid{0.0, 1.0, 2};
    double kinetic_energy = 0.0;
    ConvergenceReport magnetic_report;
};

// L = m v^2 / 2 + mu·B(t); the charge terms vanish for a neutron.
double neutron_lagrangian(const NeutronState& state, const FieldModel& field, double t);

// S = ∫ L dt over the grid, kinetic and magnetic parts integrated separately.
PathResult accumulate_action(const NeutronState& state, const FieldModel& field,
                             const QuadratureSpec& spec);

// (S_on - S_off) / hbar, differenced part by part so the small magnetic
// contribution is not swamped by the kinetic action.
double phase_shift(const PathResult& path_on, const PathResult& path_off);

// I = (1 + visibility cos(phase)) / 2.
double fringe_intensity(double phase, double visibility);

}  // namespace inertphase
