"""Time-domain simulator: assembly, stepping identities, measurements."""

import io

import numpy as np
import pytest

from viscowave.core import CONSISTENT, LUMPED, WaveSetting
from viscowave.discretization import newmark_residuals
from viscowave.dispersion import cos_numerical_wavenumber, invert_transcendental
from viscowave.simulator import (
    BarMesh,
    MeasurementError,
    SimConfig,
    assemble,
    cross_validation_summary,
    plan_run,
    run,
    write_series_csv,
)


def test_assemble_uniform_consistent_middle_row():
    s = WaveSetting(a=20, b=20, gamma=0.0)
    mesh = BarMesh(n_left=2, n_right=0, alpha=1.0, mass=CONSISTENT)
    K, C, M = assemble(mesh, s)
    ell = s.ell
    assert np.allclose(M.toarray()[1], ell * np.array([1 / 6, 2 / 3, 1 / 6]), atol=1e-15)
    assert np.allclose(K.toarray()[1], (1 / ell) * np.array([-1.0, 2.0, -1.0]), atol=1e-12)
    assert np.all(C.toarray() == 0.0)


def test_assemble_interface_lumped_mass():
    s = WaveSetting(a=20, b=20, gamma=0.0, alpha=2.0)
    mesh = BarMesh(n_left=1, n_right=1, alpha=2.0, mass=LUMPED)
    _, _, M = assemble(mesh, s)
    ell = s.ell
    assert M.toarray()[1, 1] == pytest.approx((ell + 2 * ell) / 2, rel=1e-15)
    assert M.toarray()[1, 0] == 0.0 and M.toarray()[1, 2] == 0.0


def test_assemble_interface_row_alpha_15():
    alpha = 1.5
    s = WaveSetting(a=20, b=20, gamma=0.04, alpha=alpha)
    mesh = BarMesh(n_left=1, n_right=1, alpha=alpha, mass=CONSISTENT)
    K, C, M = assemble(mesh, s)
    ell = s.ell
    m1, m2 = CONSISTENT.m1, CONSISTENT.m2
    # scaled by l: the alpha-weighted interface stencil
    assert np.allclose(K.toarray()[1] * ell, [-1.0, 1 + 1 / alpha, -1 / alpha], atol=1e-13)
    assert np.allclose(C.toarray()[1] * ell, s.damping_c * np.array([-1.0, 1 + 1 / alpha, -1 / alpha]), atol=1e-14)
    assert np.allclose(M.toarray()[1] / ell, [m2, m1 * (1 + alpha), alpha * m2], atol=1e-14)


def test_assemble_symmetric_tridiagonal():
    s = WaveSetting(a=20, b=20, gamma=0.1, alpha=0.5)
    mesh = BarMesh(n_left=5, n_right=4, alpha=0.5, mass=CONSISTENT)
    for mat in assemble(mesh, s):
        dense = mat.toarray()
        assert np.allclose(dense, dense.T, atol=1e-15)
        assert np.all(np.triu(dense, 2) == 0.0) and np.all(np.tril(dense, -2) == 0.0)


def test_mesh_validation():
    with pytest.raises(ValueError):
        BarMesh(n_left=0, n_right=3, alpha=1.0, mass=CONSISTENT)
    with pytest.raises(ValueError):
        BarMesh(n_left=3, n_right=-1, alpha=1.0, mass=CONSISTENT)
    with pytest.raises(ValueError):
        BarMesh(n_left=3, n_right=3, alpha=0.0, mass=CONSISTENT)


def test_config_rejects_burst_longer_than_run():
    s = WaveSetting(a=20, b=20, gamma=0.0)
    with pytest.raises(MeasurementError, match="too short"):
        SimConfig(setting=s, total_steps=100, probe_nodes=(10, 20), n_cycles=200)


def test_config_plain_validation():
    s = WaveSetting(a=20, b=20, gamma=0.0)
    with pytest.raises(ValueError):
        SimConfig(setting=s, total_steps=1000, probe_nodes=(20, 10), n_cycles=8)
    with pytest.raises(ValueError):
        SimConfig(setting=s, total_steps=1000, probe_nodes=(10, 20), n_cycles=8,
                  boundary="free")


def test_uniform_run_matches_closed_form():
    s = WaveSetting(a=20, b=20, gamma=0.05)
    mesh, cfg = plan_run(s)
    record = run(mesh, cfg)
    d, h = invert_transcendental(cos_numerical_wavenumber(s))
    v_closed = s.omega_dt * s.a * s.ell / d  # omega*l/d
    assert record.measured_velocity == pytest.approx(v_closed, rel=1e-3)
    assert record.measured_attenuation_per_length == pytest.approx(h / s.ell, rel=0.05)
    assert record.measured_reflection_pct is None


def test_newmark_identities_on_trajectory():
    s = WaveSetting(a=20, b=20, gamma=0.05)
    mesh, cfg = plan_run(s)
    record = run(mesh, cfg, snapshot_steps=(40, 41, 42))
    snaps = record.diagnostics["snapshots"]
    u0, v0, a0 = snaps[40]
    u1, v1, a1 = snaps[41]
    u2, v2, a2 = snaps[42]
    scale = max(np.abs(a1).max(), 1.0)
    for node in range(0, len(u0), 7):
        states = [
            (u0[node], v0[node], a0[node]),
            (u1[node], v1[node], a1[node]),
            (u2[node], v2[node], a2[node]),
        ]
        r_vel, r_disp = newmark_residuals(states, s.dt)
        assert abs(r_vel) < 1e-10 * scale
        assert abs(r_disp) < 1e-10 * scale * s.dt


def test_energy_conserved_undamped():
    s = WaveSetting(a=20, b=20, gamma=0.0)
    mesh, cfg = plan_run(s)
    record = run(mesh, cfg)
    drift = np.abs(record.energies - record.energies[0]).max() / record.energies[0]
    assert drift < 1e-8


def test_energy_non_increasing_damped():
    s = WaveSetting(a=20, b=20, gamma=0.1)
    mesh, cfg = plan_run(s)
    record = run(mesh, cfg)
    increases = np.diff(record.energies)
    assert increases.max() <= 1e-12 * record.energies[0]


def test_graded_alpha_one_below_noise_floor():
    s = WaveSetting(a=20, b=20, gamma=0.01, alpha=1.0)
    mesh, cfg = plan_run(s, graded=True)
    assert mesh.is_graded
    record = run(mesh, cfg)
    assert record.measured_reflection_pct is not None
    assert record.measured_reflection_pct < 0.1


def test_fine_mesh_undamped_velocity():
    s = WaveSetting(a=100, b=100, gamma=0.0)
    mesh, cfg = plan_run(s)
    record = run(mesh, cfg)
    d, _ = invert_transcendental(cos_numerical_wavenumber(s))
    v_closed = s.omega_dt * s.a * s.ell / d
    assert record.measured_velocity == pytest.approx(v_closed, rel=1e-3)


def test_graded_run_measures_reflection():
    s = WaveSetting(a=10, b=10, gamma=0.01, alpha=2.0)
    mesh, cfg = plan_run(s)
    record = run(mesh, cfg)
    summary = cross_validation_summary(mesh, cfg, record)
    assert summary["closed_form_reflection_pct"] == pytest.approx(2.8955988246584, rel=1e-9)
    assert abs(summary["reflection_deviation_pp"]) < 0.5


def test_graded_alpha_15_pins_closed_form():
    # moderate grading: the measured packet ratio pins the closed-form value
    s = WaveSetting(a=20, b=20, gamma=0.01, alpha=1.5)
    mesh, cfg = plan_run(s)
    record = run(mesh, cfg)
    summary = cross_validation_summary(mesh, cfg, record)
    assert summary["closed_form_reflection_pct"] == pytest.approx(0.26485475599527, rel=1e-8)
    assert abs(summary["reflection_deviation_pp"]) < 0.05


def test_reflection_noise_floor_guard():
    # heavy damping kills the round trip; the correction bound must trip
    s = WaveSetting(a=10, b=10, gamma=0.1, alpha=2.0)
    mesh, cfg = plan_run(s)
    with pytest.raises(MeasurementError, match="noise floor"):
        run(mesh, cfg)


def test_probe_overlap_guard():
    s = WaveSetting(a=10, b=10, gamma=0.01, alpha=2.0)
    mesh, cfg = plan_run(s)
    # probes pushed against the interface leave no room to separate packets
    bad = SimConfig(
        setting=s,
        total_steps=cfg.total_steps,
        probe_nodes=(mesh.n_left - 12, mesh.n_left - 2),
        n_cycles=cfg.n_cycles,
    )
    with pytest.raises(MeasurementError, match="overlap"):
        run(mesh, bad)


def test_probes_must_stay_left_of_interface():
    s = WaveSetting(a=10, b=10, gamma=0.01, alpha=2.0)
    mesh, cfg = plan_run(s)
    bad = SimConfig(
        setting=s,
        total_steps=cfg.total_steps,
        probe_nodes=(5, mesh.n_left + 3),
        n_cycles=cfg.n_cycles,
    )
    with pytest.raises(ValueError, match="interface"):
        run(mesh, bad)


def test_absorbing_pad_run():
    s = WaveSetting(a=20, b=20, gamma=0.02)
    mesh, cfg = plan_run(s, boundary="absorbing_pad")
    record = run(mesh, cfg)
    d, _ = invert_transcendental(cos_numerical_wavenumber(s))
    v_closed = s.omega_dt * s.a * s.ell / d
    assert record.measured_velocity == pytest.approx(v_closed, rel=5e-3)


def test_series_csv_format():
    s = WaveSetting(a=10, b=10, gamma=0.05)
    mesh, cfg = plan_run(s, n_cycles=8)
    record = run(mesh, cfg)
    buffer = io.StringIO()
    write_series_csv(mesh, cfg, record, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0].startswith("# a=10 b=10 gamma=0.05 mass=consistent")
    assert lines[1] == "time,probe_0,probe_1"
    assert len(lines) == 2 + cfg.total_steps + 1
    t, p0, p1 = lines[2].split(",")
    assert float(t) == 0.0 and float(p0) == 0.0 and float(p1) == 0.0


def test_diagnostics_present():
    s = WaveSetting(a=20, b=20, gamma=0.05)
    mesh, cfg = plan_run(s)
    record = run(mesh, cfg)
    for key in ("group_velocity", "spectral_attenuation_per_length", "incident_peak_steps"):
        assert key in record.diagnostics
    # spectral attenuation should agree with the envelope measurement
    assert record.diagnostics["spectral_attenuation_per_length"] == pytest.approx(
        record.measured_attenuation_per_length, rel=0.1
    )
