#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "inertphase/constants.hpp"
#include "inertphase/errors.hpp"
#include "inertphase/neutron.hpp"
#include "oracles.hpp"

using namespace inertphase;
using std::numbers::pi;

namespace {

QuadratureSpec simpson(double t0, double t1, std::size_t n) {
    return {QuadratureMethod::simpson, TimeGrid(t0, t1, n), 1e-9};
}

const Vec3 thermal{0.0, 0.0, 2200.0};

}  // namespace

TEST_CASE("neutron_lagrangian examples") {
    const FieldModel zero(PulseProfile::constant(0.0));
    NeutronState n = make_neutron(zero, {2.0, 0.0, 0.0}, 1, 1.0, 0.0);
    CHECK(neutron_lagrangian(n, zero, 0.3) == 2.0);

    const double mu0 = 3.0;
    const double b0 = 0.25;
    const FieldModel f(PulseProfile::constant(b0));
    const NeutronState at_rest = make_neutron(f, {}, 1, 1.0, mu0);
    CHECK(neutron_lagrangian(at_rest, f, 0.0) == mu0 * b0);

    const NeutronState up = make_neutron(f, thermal, 1);
    const NeutronState down = make_neutron(f, thermal, -1);
    const double k = up.kinetic_energy();
    CHECK(neutron_lagrangian(up, f, 0.0) - k == -(neutron_lagrangian(down, f, 0.0) - k));
}

TEST_CASE("make_neutron guards") {
    const FieldModel f(PulseProfile::constant(1.0));
    CHECK_THROWS_AS(make_neutron(f, thermal, 1, 0.0), ConfigError);
    CHECK_THROWS_AS(make_neutron(f, {0, 0, 0.02 * constants::speed_of_light}, 1), ConfigError);
    CHECK_THROWS_AS(make_neutron(f, thermal, 0), ConfigError);
    const NeutronState n = make_neutron(FieldModel(PulseProfile::constant(1.0), {1, 0, 0}), thermal, -1);
    CHECK(n.moment == Vec3{-constants::neutron_moment_magnitude, 0, 0});
}

TEST_CASE("accumulate_action examples") {
    const double b = 1e-3;
    const double duration = 0.01;
    const FieldModel f(PulseProfile::constant(b));
    const NeutronState n = make_neutron(f, thermal, 1);
    const PathResult p = accumulate_action(n, f, simpson(0.0, duration, 4096));
    CHECK(oracle::relative_error(p.magnetic_action, constants::neutron_moment_magnitude * b * duration) < 1e-12);
    CHECK(oracle::relative_error(p.action, p.kinetic_action + p.magnetic_action) <= 1e-12);
    CHECK(p.samples.size() == 4097);

    const FieldModel zero(PulseProfile::constant(0.0));
    const PathResult free = accumulate_action(n, zero, simpson(0.0, duration, 4096));
    CHECK(free.magnetic_action == 0.0);
    CHECK(oracle::relative_error(free.action, n.kinetic_energy() * duration) < 1e-12);

    // Raised cosine: closed-form area B W / 2, cross-checked by Gauss-Legendre and Richardson.
    // Pulse edges sit on grid nodes.
    const FieldModel pulse(PulseProfile::raised_cosine(2e-3, 0.0025, 0.005));
    const PathResult rc = accumulate_action(n, pulse, simpson(0.0, duration, 4096));
    const double area = 2e-3 * 0.005 / 2.0;
    const double area_gl =
        oracle::gauss_legendre([&](double t) { return pulse.profile().value(t); }, 0.0, duration, {0.0025, 0.0075});
    CHECK(oracle::relative_error(area_gl, area) < 1e-13);
    CHECK(oracle::relative_error(rc.magnetic_action, n.moment.z * area) < 1e-10);
    CHECK(oracle::relative_error(rc.magnetic_report.extrapolated, n.moment.z * area) < 1e-10);
}

TEST_CASE("accumulate_action raises when the grid is too coarse") {
    const FieldModel pulse(PulseProfile::linear_ramp(1.0, 0.0123, 0.0031));
    const NeutronState n = make_neutron(pulse, thermal, 1);
    CHECK_THROWS_AS(accumulate_action(n, pulse, {QuadratureMethod::simpson, TimeGrid(0.0, 0.02, 16), 1e-12}),
                    ConvergenceError);
}

TEST_CASE("action is additive over adjacent intervals") {
    const FieldModel pulse(PulseProfile::smoothed_rectangle(1e-3, 0.00125, 0.0025, 0.0025));
    const NeutronState n = make_neutron(pulse, thermal, 1);
    const PathResult whole = accumulate_action(n, pulse, simpson(0.0, 0.01, 4096));
    const PathResult left = accumulate_action(n, pulse, simpson(0.0, 0.005, 2048));
    const PathResult right = accumulate_action(n, pulse, simpson(0.005, 0.01, 2048));
    CHECK(oracle::relative_error(left.action + right.action, whole.action) < 1e-12);
    CHECK(oracle::relative_error(left.magnetic_action + right.magnetic_action, whole.magnetic_action) < 1e-12);
}

TEST_CASE("phase_shift examples") {
    const double b = 2e-3;
    const double duration = 0.004;
    const FieldModel f(PulseProfile::constant(b));
    const FieldModel off = f.with_amplitude(0.0);
    const QuadratureSpec spec = simpson(0.0, duration, 1024);
    const NeutronState up = make_neutron(f, thermal, 1);
    const NeutronState down = make_neutron(f, thermal, -1);

    const PathResult on = accumulate_action(up, f, spec);
    CHECK(phase_shift(on, on) == 0.0);

    const double phi = phase_shift(on, accumulate_action(up, off, spec));
    CHECK(oracle::relative_error(phi, constants::neutron_moment_magnitude * b * duration / constants::hbar) < 1e-12);

    const double phi_down = phase_shift(accumulate_action(down, f, spec), accumulate_action(down, off, spec));
    CHECK(phi_down == -phi);

    const PathResult other_grid = accumulate_action(up, off, simpson(0.0, duration, 2048));
    CHECK_THROWS_AS(phase_shift(on, other_grid), ConfigError);
    const NeutronState faster = make_neutron(f, 2.0 * thermal, 1);
    CHECK_THROWS_AS(phase_shift(on, accumulate_action(faster, off, spec)), ConfigError);
}

TEST_CASE("fringe_intensity examples") {
    CHECK(fringe_intensity(0.0, 1.0) == 1.0);
    CHECK(fringe_intensity(pi, 1.0) == doctest::Approx(0.0));
    CHECK(fringe_intensity(pi / 2.0, 0.5) == doctest::Approx(0.5));
    CHECK(fringe_intensity(0.3 + 2.0 * pi, 0.8) == doctest::Approx(fringe_intensity(0.3, 0.8)));
    CHECK_THROWS_AS(fringe_intensity(0.0, 1.5), ConfigError);
    CHECK_THROWS_AS(fringe_intensity(0.0, -0.1), ConfigError);
}

TEST_CASE("magnetic action is linear in amplitude") {
    const FieldModel base(PulseProfile::raised_cosine(1.0, 0.0, 0.01));
    const NeutronState n = make_neutron(base, thermal, 1);
    const QuadratureSpec spec = simpson(0.0, 0.01, 4096);
    const double unit = accumulate_action(n, base, spec).magnetic_action;
    for (double amp : {-3.0, 0.5, 2.0, 7.0}) {
        const double m = accumulate_action(n, base.with_amplitude(amp), spec).magnetic_action;
        CHECK(oracle::relative_error(m, amp * unit) < 1e-14);
    }
}

TEST_CASE("neutron state is untouched by a run") {
    const FieldModel f(PulseProfile::smoothed_rectangle(1e-3, 0.0, 0.0025, 0.0025));
    const NeutronState n = make_neutron(f, thermal, -1);
    NeutronState before;
    std::memcpy(&before, &n, sizeof n);
    (void)accumulate_action(n, f, simpson(0.0, 0.01, 512));
    (void)neutron_lagrangian(n, f, 0.003);
    CHECK(std::memcmp(&before, &n, sizeof n) == 0);
}
