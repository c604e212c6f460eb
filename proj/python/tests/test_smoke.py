import math
import os
import pathlib

import pytest

import inertphase as ip

SCENARIOS = pathlib.Path(os.environ.get(
    "INERTPHASE_SCENARIO_DIR", pathlib.Path(__file__).resolve().parents[2] / "scenarios"))


def test_vectors_and_constants():
    assert ip.dot((1, 2, 3), (4, 5, 6)) == 32.0
    assert list(ip.cross((2, 0, 0), (0, 3, 0))) == [0.0, 0.0, 6.0]
    assert ip.constants.hbar == pytest.approx(1.054571817e-34)


def test_ring_stokes_equivalence():
    ring = ip.RingDevice()
    ring.radius_m, ring.current_a = 0.1, 0.5
    ring.device_mass_kg, ring.fluid_mass_kg, ring.fluid_speed_m_per_s = 1.0, 0.5, 1.0
    field = ip.FieldModel(ip.PulseProfile.constant(2.0))
    line = ip.interaction_line_integral(ring, field, 0.0, 1024)
    assert line == pytest.approx(math.pi * 0.01 * 0.5 * 2.0, rel=1e-9)
    assert line == pytest.approx(ip.interaction_analytic(ring, field, 0.0), rel=1e-9)


def test_neutron_phase_and_fringes():
    field = ip.FieldModel(ip.PulseProfile.raised_cosine(2e-3, 0.0025, 0.005))
    n = ip.make_neutron(field, (0, 0, 2200), 1)
    spec = ip.QuadratureSpec(ip.QuadratureMethod.simpson, ip.TimeGrid(0.0, 0.01, 4096))
    on = ip.accumulate_action(n, field, spec)
    off = ip.accumulate_action(n, field.with_amplitude(0.0), spec)
    area = 2e-3 * 0.005 / 2
    assert on.magnetic_action == pytest.approx(ip.constants.neutron_moment_magnitude * area, rel=1e-10)
    phi = ip.phase_shift(on, off)
    assert phi == pytest.approx(ip.constants.neutron_moment_magnitude * area / ip.constants.hbar, rel=1e-10)
    assert ip.fringe_intensity(math.pi, 1.0) == pytest.approx(0.0, abs=1e-15)


def test_integrators_accept_python_callables():
    value, report = ip.integrate_time(math.sin, ip.QuadratureSpec(
        ip.QuadratureMethod.simpson, ip.TimeGrid(0.0, math.pi, 128), 1e-6))
    assert value == pytest.approx(2.0, rel=1e-8)
    ys = ip.step_ode(1.0, lambda t, y: -y, ip.TimeGrid(0.0, 1.0, 100))
    assert ys[-1] == pytest.approx(math.exp(-1.0), abs=1e-8)


def test_compare_scenario_run(tmp_path):
    scenario = ip.load_scenario(SCENARIOS / "compare_raised_cosine.json")
    summary = ip.run(scenario, out_dir=tmp_path)
    assert summary["quantum_depends"] is True
    assert summary["classical_invariant"] is True
    assert (tmp_path / "compare_raised_cosine_ring.csv").exists()
    assert ip.parse_scenario(ip.write_scenario(scenario)) == scenario


def test_sweep_slope():
    summary = ip.run(ip.load_scenario(SCENARIOS / "sweep_amplitude.json"), workers=2)
    assert len(summary["sweep_rows"]) == 5
    assert summary["fitted_slope"] == pytest.approx(summary["expected_slope"], rel=1e-8)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ip.ConfigError) as info:
        ip.load_scenario(SCENARIOS / "invalid_ring_field_at_start.json")
    assert "field must vanish at start" in str(info.value)
    with pytest.raises(ip.ParseError):
        ip.parse_scenario("{ not json")
    ring = ip.RingDevice()
    ring.radius_m, ring.current_a = 1.0, 10.0
    ring.device_mass_kg, ring.fluid_mass_kg, ring.fluid_speed_m_per_s = 1.0, 0.5, 1.0
    with pytest.raises(ip.PhysicalValidityError):
        ip.evolve_fluid_energy(ring, ip.FieldModel(ip.PulseProfile.raised_cosine(1.0, 0.0, 1.0)),
                               ip.TimeGrid(0.0, 1.0, 256))
