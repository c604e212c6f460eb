#include "inertphase/compare.hpp"

#include <cmath>
#include <numbers>

#include "inertphase/constants.hpp"
#include "inertphase/errors.hpp"

namespace inertphase {

double matched_ring_current(const NeutronState& neutron, double radius_m, const Vec3& axis) {
    if (!(radius_m > 0.0)) throw ConfigError("ring: radius must be positive");
    return dot(neutron.moment, axis) / (std::numbers::pi * radius_m * radius_m);
}

ComparisonReport compare_quantum_classical(const NeutronState& neutron, const RingDevice& ring,
                                           const FieldModel& field, const QuadratureSpec& spec,
                                           const CompareOptions& options) {
    const Vec3 mu_ring = ring_moment(ring);
    const double mismatch = norm(mu_ring - neutron.moment);
    if (mismatch > 1e-9 * norm(neutron.moment)) {
        throw ConfigError(
            "compare: ring moment must match the neutron moment in magnitude and direction");
    }

    const FieldModel off = field.with_amplitude(0.0);

    ComparisonReport r;
    r.neutron_on = accumulate_action(neutron, field, spec);
    r.neutron_off = accumulate_action(neutron, off, spec);
    r.ring_on = evolve_fluid_energy(ring, field, spec.grid, options.evolve);
    r.ring_off = evolve_fluid_energy(ring, off, spec.grid, options.evolve);

    r.pulse_area = field.profile().area(spec.grid.t_start(), spec.grid.t_end());
    r.phase_shift = phase_shift(r.neutron_on, r.neutron_off);
    r.delta_s_quantum = (r.neutron_on.kinetic_action - r.neutron_off.kinetic_action) +
                        (r.neutron_on.magnetic_action - r.neutron_off.magnetic_action);
    r.s_classical = r.ring_on.action;
    r.delta_s_classical = r.ring_on.action - r.ring_off.action;

    r.quantum_depends =
        std::abs(r.delta_s_quantum) > options.phase_resolution_rad * constants::hbar;
    r.classical_invariant =
        std::abs(r.delta_s_classical) <= options.invariance_tol * std::abs(r.s_classical);
    return r;
}

}  // namespace inertphase
