#include <cmath>
#include <numbers>

#include "doctest.h"
#include "inertphase/compare.hpp"
#include "inertphase/constants.hpp"
#include "inertphase/errors.hpp"
#include "inertphase/ring.hpp"
#include "oracles.hpp"

using namespace inertphase;
using std::numbers::pi;

namespace {

RingDevice make_ring(double a, double current) {
    RingDevice r;
    r.radius_m = a;
    r.current_a = current;
    r.device_mass_kg = 2.0;
    r.fluid_mass_kg = 0.5;
    r.axial_velocity_m_per_s = 1.5;
    r.fluid_speed_m_per_s = 3.0;
    return r;
}

// Edges on grid nodes for TimeGrid(0, 1, n) with n a multiple of 16.
std::vector<PulseProfile> returning_pulses(double b) {
    return {PulseProfile::raised_cosine(b, 0.125, 0.5), PulseProfile::smoothed_rectangle(b, 0.125, 0.1875, 0.25)};
}

}  // namespace

TEST_CASE("ring_moment examples") {
    CHECK(ring_moment(make_ring(1.0, 1.0)) == Vec3{0, 0, pi});
    CHECK(ring_moment(make_ring(1.0, 0.0)) == Vec3{0, 0, 0});
    CHECK(ring_moment(make_ring(0.1, 0.5)).z == doctest::Approx(0.005 * pi).epsilon(1e-15));
}

TEST_CASE("interaction_line_integral examples") {
    const RingDevice ring = make_ring(0.1, 0.5);
    CHECK(interaction_line_integral(ring, FieldModel(PulseProfile::constant(0.0)), 0.0, 1024) == 0.0);

    const FieldModel f(PulseProfile::constant(2.0));
    const double got = interaction_line_integral(ring, f, 0.0, 1024);
    CHECK(oracle::relative_error(got, pi * 0.01 * 0.5 * 2.0) < 1e-9);
    CHECK(oracle::relative_error(got, 0.031415926535897934) < 1e-9);

    RingDevice reversed = ring;
    reversed.current_a = -ring.current_a;
    CHECK(interaction_line_integral(reversed, f, 0.0, 1024) == -got);
}

TEST_CASE("interaction_analytic examples") {
    const RingDevice ring = make_ring(0.3, 2.0);
    CHECK(interaction_analytic(ring, FieldModel(PulseProfile::constant(0.0)), 0.0) == 0.0);
    CHECK(interaction_analytic(ring, FieldModel(PulseProfile::constant(1.0), {1, 0, 0}), 0.0) == 0.0);

    oracle::Random rng(8);
    for (int k = 0; k < 20; ++k) {
        RingDevice r = make_ring(rng.uniform(0.01, 1.0), rng.uniform(-10, 10));
        r.axis = rng.unit();
        r.center = rng.vec(2.0);
        const FieldModel f(PulseProfile::constant(rng.uniform(0.1, 5.0)), rng.unit());
        CHECK(oracle::relative_error(interaction_line_integral(r, f, 0.0, 1024), interaction_analytic(r, f, 0.0)) <
              1e-9);
    }
}

TEST_CASE("line integral converges to mu.B as segments increase") {
    RingDevice r = make_ring(0.4, 3.0);
    r.center = {0.5, 0.7, -0.3};
    r.axis = Vec3{0.0, 0.6, 0.8};
    const FieldModel f(PulseProfile::constant(1.2), Vec3{0.8, 0.0, 0.6});
    const double want = interaction_analytic(r, f, 0.0);
    for (std::size_t n = 8; n <= 1024; n *= 2) {
        CHECK(oracle::relative_error(interaction_line_integral(r, f, 0.0, n), want) < 1e-9);
    }
    CHECK_THROWS_AS(interaction_line_integral(r, f, 0.0, 4), ConfigError);
}

TEST_CASE("gauge shift leaves the loop integral unchanged") {
    oracle::Random rng(9);
    for (int k = 0; k < 20; ++k) {
        RingDevice r = make_ring(rng.uniform(0.01, 1.0), rng.uniform(-10, 10));
        r.axis = rng.unit();
        r.center = rng.vec(1.0);
        const FieldModel f(PulseProfile::constant(rng.uniform(0.1, 5.0)), rng.unit());
        const double plain = interaction_line_integral(r, f, 0.0, 1024);
        const double shifted = interaction_line_integral(r, f, 0.0, 1024, {rng.uniform(-50, 50), 0.0, 0.0});
        CHECK(oracle::relative_error(shifted, plain) <= 1e-9);
    }
}

TEST_CASE("induced_power examples") {
    const RingDevice unit = make_ring(1.0, 1.0);
    CHECK(induced_power(unit, FieldModel(PulseProfile::constant(3.0)), 0.2) == 0.0);
    const FieldModel ramp(PulseProfile::linear_ramp(1.0, 0.0, 1.0));
    CHECK(induced_power(unit, ramp, 0.5) == doctest::Approx(-pi).epsilon(1e-15));
    CHECK(induced_power(make_ring(1.0, -1.0), ramp, 0.5) == -induced_power(unit, ramp, 0.5));
}

TEST_CASE("evolve_fluid_energy: zero field keeps kinetic energy") {
    const RingDevice ring = make_ring(0.2, 1.0);
    const auto res = evolve_fluid_energy(ring, FieldModel(PulseProfile::constant(0.0)), TimeGrid(0, 1, 64));
    for (const auto& s : res.samples) {
        CHECK(s.kinetic_fluid == ring.kinetic_fluid_initial());
        CHECK(s.lagrangian_total == res.lagrangian_initial);
    }
    CHECK(res.lagrangian_initial == ring.kinetic_axial() + ring.kinetic_fluid_initial());
}

TEST_CASE("evolve_fluid_energy: ramp and hold loses pi a^2 I B1") {
    const RingDevice ring = make_ring(0.2, 1.5);
    const double b1 = 0.8;
    const FieldModel f(PulseProfile::linear_ramp(b1, 0.25, 0.5));
    const auto res = evolve_fluid_energy(ring, f, TimeGrid(0, 1, 256));
    const double delta = res.samples.back().kinetic_fluid - res.kinetic_initial;
    CHECK(oracle::relative_error(delta, -pi * 0.04 * 1.5 * b1) < 1e-12);
    CHECK(res.samples.back().v_perp < ring.fluid_speed_m_per_s);
}

TEST_CASE("evolve_fluid_energy: closed form at every step, pulses return the energy") {
    const RingDevice ring = make_ring(0.3, -2.0);
    for (const auto& p : returning_pulses(1.1)) {
        const FieldModel f(p);
        const auto res = evolve_fluid_energy(ring, f, TimeGrid(0, 1, 4096));
        const Vec3 mu = ring_moment(ring);
        for (const auto& s : res.samples) {
            const double closed = res.kinetic_initial - dot(mu, field_at(f, s.t));
            CHECK(std::abs(s.kinetic_fluid - closed) <= 1e-9 * res.kinetic_initial);
            CHECK(s.v_perp == doctest::Approx(std::sqrt(2.0 * s.kinetic_fluid / ring.fluid_mass_kg)));
        }
        CHECK(oracle::relative_error(res.samples.back().kinetic_fluid, res.kinetic_initial) < 1e-9);
    }
}

TEST_CASE("energy bookkeeping: dKE/dt equals induced power along the solution") {
    const RingDevice ring = make_ring(0.25, 3.0);
    for (const auto& p : returning_pulses(2.0)) {
        const FieldModel f(p);
        const TimeGrid grid(0, 1, 4096);
        const auto res = evolve_fluid_energy(ring, f, grid);
        std::vector<double> ke;
        for (const auto& s : res.samples) ke.push_back(s.kinetic_fluid);
        double peak = 0.0;
        for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
            peak = std::max(peak, std::abs(induced_power(ring, f, grid.time_at(i))));
        }
        const auto breaks = p.breakpoints();
        const double h = grid.dt();
        for (std::size_t i = 2; i + 2 < grid.n_nodes(); ++i) {
            const double t = grid.time_at(i);
            bool near_break = false;
            for (double tb : breaks) near_break = near_break || std::abs(t - tb) < 2.5 * h;
            if (near_break) continue;
            const double residual = oracle::five_point_derivative(ke, i, h) - induced_power(ring, f, t);
            CHECK(std::abs(residual) <= 1e-8 * peak);
        }
    }
}

TEST_CASE("classical Lagrangian and action are field independent") {
    const RingDevice ring = make_ring(0.5, 2.0);
    const TimeGrid grid(0, 1, 4096);
    for (const auto& p : {PulseProfile::linear_ramp(1.0, 0.25, 0.5), PulseProfile::raised_cosine(1.0, 0.125, 0.5),
                          PulseProfile::smoothed_rectangle(1.0, 0.125, 0.1875, 0.25)}) {
        const auto res = evolve_fluid_energy(ring, FieldModel(p), grid);
        CHECK(res.max_relative_lagrangian_deviation() <= 1e-6);
        CHECK(oracle::relative_error(res.action, res.lagrangian_initial * grid.duration()) <= 1e-6);
        const RingSample& mid = res.samples[2048];
        CHECK(classical_lagrangian(ring, mid.kinetic_fluid, FieldModel(p), mid.t) == mid.lagrangian_total);
    }
}

TEST_CASE("evolve_fluid_energy guards") {
    const TimeGrid grid(0, 1, 256);
    CHECK_THROWS_AS(evolve_fluid_energy(make_ring(0.2, 1.0), FieldModel(PulseProfile::constant(1.0)), grid),
                    ConfigError);
    CHECK_THROWS_AS(
        evolve_fluid_energy(make_ring(0.2, 1.0), FieldModel(PulseProfile::linear_ramp(1.0, -0.1, 0.5)), grid),
        ConfigError);

    // pi a^2 I B = pi * 1 * 10 * 1 > KE0 = 0.5 * 0.5 * 9 = 2.25: the fluid would stall.
    CHECK_THROWS_AS(
        evolve_fluid_energy(make_ring(1.0, 10.0), FieldModel(PulseProfile::raised_cosine(1.0, 0.0, 1.0)), grid),
        PhysicalValidityError);

    RingDevice bad = make_ring(0.2, 1.0);
    bad.device_mass_kg = 0.1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = make_ring(0.0, 1.0);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = make_ring(0.2, 1.0);
    bad.axis = {0, 0, 1.1};
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    // Coarse grid for a sharp pulse trips the step-halving check.
    CHECK_THROWS_AS(evolve_fluid_energy(make_ring(0.2, 1.0), FieldModel(PulseProfile::raised_cosine(0.5, 0.0, 0.05)),
                                        TimeGrid(0, 1, 8), {1e-12}),
                    ConvergenceError);
}

TEST_CASE("compare_quantum_classical") {
    const FieldModel f(PulseProfile::raised_cosine(1e-3, 0.00125, 0.0075));
    const NeutronState n = make_neutron(f, {0, 0, 2200}, 1);
    RingDevice ring = make_ring(0.01, 0.0);
    ring.current_a = matched_ring_current(n, ring.radius_m, ring.axis);
    const QuadratureSpec spec{QuadratureMethod::simpson, TimeGrid(0, 0.01, 4096), 1e-9};

    const ComparisonReport zero = compare_quantum_classical(n, ring, f.with_amplitude(0.0), spec);
    CHECK(zero.delta_s_quantum == 0.0);
    CHECK(zero.delta_s_classical == 0.0);
    CHECK_FALSE(zero.quantum_depends);
    CHECK(zero.classical_invariant);

    const ComparisonReport on = compare_quantum_classical(n, ring, f, spec);
    const double area = 1e-3 * 0.0075 / 2.0;
    CHECK(oracle::relative_error(on.delta_s_quantum, constants::neutron_moment_magnitude * area) < 1e-10);
    CHECK(std::abs(on.delta_s_classical) <= 1e-6 * std::abs(on.s_classical));
    CHECK(on.quantum_depends);
    CHECK(on.classical_invariant);

    const ComparisonReport doubled = compare_quantum_classical(n, ring, f.with_amplitude(2e-3), spec);
    CHECK(oracle::relative_error(doubled.delta_s_quantum, 2.0 * on.delta_s_quantum) < 1e-12);
    CHECK(doubled.classical_invariant);

    RingDevice wrong = ring;
    wrong.current_a *= 1.01;
    CHECK_THROWS_AS(compare_quantum_classical(n, wrong, f, spec), ConfigError);
    wrong = ring;
    wrong.axis = {1, 0, 0};
    CHECK_THROWS_AS(compare_quantum_classical(n, wrong, f, spec), ConfigError);
}
