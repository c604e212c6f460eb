#include "inertphase/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "inertphase/errors.hpp"

namespace inertphase {

namespace {

struct RingOdeState {
    double kinetic = 0.0;
    double action = 0.0;
};

RingOdeState operator+(const RingOdeState& a, const RingOdeState& b) {
    return {a.kinetic + b.kinetic, a.action + b.action};
}

RingOdeState operator*(double h, const RingOdeState& a) { return {h * a.kinetic, h * a.action}; }

bool ode_state_finite(const RingOdeState& y) {
    return std::isfinite(y.kinetic) && std::isfinite(y.action);
}

std::vector<RingOdeState> integrate_ring(const RingDevice& ring, const FieldModel& field,
                                         const TimeGrid& grid) {
    const double axial = ring.kinetic_axial();
    const Vec3 mu = ring_moment(ring);
    const auto rhs = [&](double t, const RingOdeState& y, StepEdge edge) -> RingOdeState {
        Vec3 rate;
        switch (edge) {
            case StepEdge::start: rate = field_rate_from_right(field, t); break;
            case StepEdge::end: rate = field_rate_from_left(field, t); break;
            case StepEdge::interior: rate = field_rate_at(field, t); break;
        }
        return {-dot(mu, rate), axial + y.kinetic + dot(mu, field_at(field, t))};
    };
    return step_ode(RingOdeState{ring.kinetic_fluid_initial(), 0.0}, rhs, grid);
}

}  // namespace

void RingDevice::validate() const {
    std::vector<std::string> issues;
    if (!(radius_m > 0.0) || !std::isfinite(radius_m)) issues.emplace_back("ring: radius must be positive");
    if (!std::isfinite(current_a)) issues.emplace_back("ring: current must be finite");
    if (!(fluid_mass_kg > 0.0) || !std::isfinite(fluid_mass_kg)) {
        issues.emplace_back("ring: fluid mass must be positive");
    }
    if (!(device_mass_kg >= fluid_mass_kg) || !std::isfinite(device_mass_kg)) {
        issues.emplace_back("ring: device mass must be at least the fluid mass");
    }
    if (!std::isfinite(axial_velocity_m_per_s) || !std::isfinite(fluid_speed_m_per_s)) {
        issues.emplace_back("ring: velocities must be finite");
    }
    if (!is_finite(center)) issues.emplace_back("ring: center must be finite");
    if (!is_finite(axis) || !is_unit(axis)) issues.emplace_back("ring: axis must be a unit vector");
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

Vec3 ring_moment(const RingDevice& ring) {
    return (std::numbers::pi * ring.radius_m * ring.radius_m * ring.current_a) * ring.axis;
}

double interaction_line_integral(const RingDevice& ring, const FieldModel& field, double t,
                                 std::size_t n_segments, const Vec3& gauge_gradient) {
    const auto potential = [&](const Vec3& r) {
        return vector_potential_at(field, r, t, gauge_gradient);
    };
    return ring.current_a *
           loop_quadrature(potential, ring.radius_m, ring.center, ring.axis, n_segments);
}

double interaction_analytic(const RingDevice& ring, const FieldModel& field, double t) {
    return dot(ring_moment(ring), field_at(field, t));
}

double induced_power(const RingDevice& ring, const FieldModel& field, double t) {
    return -dot(ring_moment(ring), field_rate_at(field, t));
}

double classical_lagrangian(const RingDevice& ring, double kinetic_fluid, const FieldModel& field,
                            double t) {
    return ring.kinetic_axial() + kinetic_fluid + interaction_analytic(ring, field, t);
}

double RingRunResult::max_relative_lagrangian_deviation() const {
    double worst = 0.0;
    for (const auto& s : samples) {
        worst = std::max(worst, std::abs(s.lagrangian_total - lagrangian_initial));
    }
    return worst / std::abs(lagrangian_initial);
}

RingRunResult evolve_fluid_energy(const RingDevice& ring, const FieldModel& field,
                                  const TimeGrid& grid, const EvolveOptions& options) {
    ring.validate();
    const double b0 = std::abs(field.profile().value(grid.t_start()));
    if (b0 > 1e-12 * std::abs(field.profile().amplitude())) {
        throw ConfigError("ring: field must vanish at start (B(T_0) = 0, before the field is turned on)");
    }
    const double k0 = ring.kinetic_fluid_initial();
    if (!(k0 > 0.0)) {
        throw PhysicalValidityError("ring: fluid must be moving at T_0 (kinetic energy > 0)");
    }

    const auto coarse = integrate_ring(ring, field, grid);
    const auto fine = integrate_ring(ring, field, grid.refined(2));

    for (std::size_t i = 0; i < coarse.size(); ++i) {
        if (!(coarse[i].kinetic > 0.0)) {
            std::ostringstream msg;
            msg << "ring: fluid stalls at t = " << grid.time_at(i)
                << " s (kinetic energy would reach " << coarse[i].kinetic << " J)";
            throw PhysicalValidityError(msg.str());
        }
    }

    double max_diff = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        max_diff = std::max(max_diff, std::abs(coarse[i].kinetic - fine[2 * i].kinetic));
    }
    RingRunResult out;
    out.kinetic_initial = k0;
    out.lagrangian_initial = classical_lagrangian(ring, k0, field, grid.t_start());
    out.kinetic_report.coarse = coarse.back().kinetic;
    out.kinetic_report.fine = fine.back().kinetic;
    out.kinetic_report.extrapolated = richardson(coarse.back().kinetic, fine.back().kinetic, 4);
    out.kinetic_report.error_estimate = max_diff * 16.0 / 15.0;
    if (out.kinetic_report.error_estimate > options.rel_tol * k0) {
        std::ostringstream msg;
        msg << "ring: kinetic energy step-halving error " << out.kinetic_report.error_estimate
            << " J exceeds " << options.rel_tol << " x KE(T_0) with " << grid.n_steps() << " steps";
        throw ConvergenceError(msg.str());
    }

    out.samples.reserve(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const double t = grid.time_at(i);
        const double kinetic = coarse[i].kinetic;
        RingSample s;
        s.t = t;
        s.field_t = dot(ring.axis, field_at(field, t));
        s.kinetic_fluid = kinetic;
        s.v_perp = std::sqrt(2.0 * kinetic / ring.fluid_mass_kg);
        s.interaction = interaction_analytic(ring, field, t);
        s.lagrangian_total = classical_lagrangian(ring, kinetic, field, t);
        s.cumulative_action = coarse[i].action;
        out.samples.push_back(s);
    }
    out.action = coarse.back().action;
    return out;
}

}  // namespace inertphase
