#include "inertphase/neutron.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "inertphase/errors.hpp"

namespace inertphase {

NeutronState make_neutron(const FieldModel& field, const Vec3& velocity, int spin_sign,
                          double mass_kg, double moment_magnitude) {
    if (!(mass_kg > 0.0) || !std::isfinite(mass_kg)) {
        throw ConfigError("neutron: mass must be positive");
    }
    if (!is_finite(velocity)) throw ConfigError("neutron: velocity must be finite");
    const double v_max = constants::max_speed_fraction_of_c * constants::speed_of_light;
    if (!(norm(velocity) < v_max)) {
        throw ConfigError("neutron: |v| must stay below 0.01 c (nonrelativistic limit)");
    }
    if (spin_sign != 1 && spin_sign != -1) {
        throw ConfigError("neutron: spin_sign must be +1 or -1");
    }
    if (!(moment_magnitude >= 0.0) || !std::isfinite(moment_magnitude)) {
        throw ConfigError("neutron: moment magnitude must be non-negative");
    }
    NeutronState state;
    state.mass_kg = mass_kg;
    state.velocity = velocity;
    state.spin_sign = spin_sign;
    state.moment = (static_cast<double>(spin_sign) * moment_magnitude) * field.direction();
    return state;
}

double neutron_lagrangian(const NeutronState& state, const FieldModel& field, double t) {
    return state.kinetic_energy() + dot(state.moment, field_at(field, t));
}

PathResult accumulate_action(const NeutronState& state, const FieldModel& field,
                             const QuadratureSpec& spec) {
    spec.validate();
    const double kinetic = state.kinetic_energy();

    PathResult out;
    out.grid = spec.grid;
    out.kinetic_energy = kinetic;
    // Constant integrand: the composite rules reproduce K * duration.
    out.kinetic_action = quadrature_sum([kinetic](double) { return kinetic; }, spec.method, spec.grid);

    const auto magnetic = [&](double t) { return dot(state.moment, field_at(field, t)); };
    const QuadratureResult q = integrate_time(magnetic, spec);
    out.magnetic_action = q.value;
    out.magnetic_report = q.report;
    out.action = out.kinetic_action + out.magnetic_action;

    out.samples.reserve(spec.grid.n_nodes());
    for (std::size_t i = 0; i < spec.grid.n_nodes(); ++i) {
        const double t = spec.grid.time_at(i);
        out.samples.push_back({t, neutron_lagrangian(state, field, t)});
    }
    return out;
}

double phase_shift(const PathResult& path_on, const PathResult& path_off) {
    if (!(path_on.grid == path_off.grid)) {
        throw ConfigError("phase_shift: paths were accumulated on different time grids");
    }
    const double k_on = path_on.kinetic_energy;
    const double k_off = path_off.kinetic_energy;
    if (std::abs(k_on - k_off) > 1e-12 * std::max(std::abs(k_on), std::abs(k_off))) {
        throw ConfigError("phase_shift: paths have different kinetic parameters");
    }
    const double delta = (path_on.kinetic_action - path_off.kinetic_action) +
                         (path_on.magnetic_action - path_off.magnetic_action);
    return delta / constants::hbar;
}

double fringe_intensity(double phase, double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw ConfigError("fringe_intensity: visibility must lie in [0, 1]");
    }
    return 0.5 * (1.0 + visibility * std::cos(phase));
}

}  // namespace inertphase
