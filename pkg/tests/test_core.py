"""Core parameterization: derived groups, validation, complex arithmetic contract."""

import cmath
import math

import numpy as np
import pytest

from viscowave.core import (
    CONSISTENT,
    LUMPED,
    OMEGA,
    MassModel,
    WaveSetting,
    derived_groups,
    mass_model,
)

# frozen from 50-digit evaluation
PSI2_A100_G01 = 3.1830988618379067
PSI2_A10_G001 = 0.031830988618379067


def test_derived_groups_unity_courant():
    psi1, psi2, omega_dt, omega_c = derived_groups(WaveSetting(a=100, b=100, gamma=0.1))
    assert psi1 == 1.0
    assert psi2 == pytest.approx(PSI2_A100_G01, rel=1e-15)
    assert omega_dt == pytest.approx(2 * math.pi / 100, rel=1e-15)
    assert omega_c == pytest.approx(0.2, rel=1e-15)


def test_derived_groups_undamped():
    psi1, psi2, _, omega_c = derived_groups(WaveSetting(a=50, b=100, gamma=0.0))
    assert psi1 == 0.25
    assert psi2 == 0.0
    assert omega_c == 0.0


def test_derived_groups_coarse():
    psi1, psi2, _, omega_c = derived_groups(WaveSetting(a=10, b=5, gamma=0.01))
    assert psi1 == 4.0
    assert psi2 == pytest.approx(PSI2_A10_G001, rel=1e-15)
    assert omega_c == pytest.approx(0.02, rel=1e-15)


def test_group_identity_psi2_omega_dt_equals_omega_c():
    rng = np.random.default_rng(7)
    for _ in range(500):
        a = float(10 ** rng.uniform(0.5, 3))
        b = float(10 ** rng.uniform(0.5, 3))
        gamma = float(rng.uniform(0.0, 1.0))
        s = WaveSetting(a=a, b=b, gamma=gamma)
        assert abs(s.psi2 * s.omega_dt - s.omega_c) <= 1e-14 * max(1.0, s.omega_c)


def test_zero_damping_equivalences():
    s = WaveSetting(a=30, b=40, gamma=0.0)
    assert s.psi2 == 0.0 and s.omega_c == 0.0
    s = WaveSetting(a=30, b=40, gamma=0.2)
    assert s.psi2 > 0.0 and s.omega_c > 0.0


def test_scales():
    s = WaveSetting(a=25, b=50, gamma=0.1)
    assert s.dt == pytest.approx(1 / 25)
    assert s.ell == pytest.approx(1 / 50)
    assert s.courant == pytest.approx(2.0)
    assert s.damping_c == pytest.approx(0.1 / math.pi, rel=1e-15)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"a": 0.0, "b": 10},
        {"a": -5, "b": 10},
        {"a": 10, "b": 0.0},
        {"a": 10, "b": 10, "gamma": -0.1},
        {"a": 10, "b": 10, "alpha": 0.0},
        {"a": math.inf, "b": 10},
    ],
)
def test_setting_validation(kwargs):
    with pytest.raises(ValueError):
        WaveSetting(**kwargs)


def test_mass_models():
    assert CONSISTENT.m1 == pytest.approx(1 / 3)
    assert CONSISTENT.m2 == pytest.approx(1 / 6)
    assert LUMPED.m1 == 0.5 and LUMPED.m2 == 0.0
    assert CONSISTENT.name == "consistent" and LUMPED.name == "lumped"
    assert mass_model("lumped") is LUMPED
    with pytest.raises(ValueError):
        mass_model("diagonal")
    with pytest.raises(ValueError):
        MassModel(m1=0.4, m2=0.2)  # violates m1 + m2 = 1/2


def test_complex_field_axioms():
    rng = np.random.default_rng(11)
    for _ in range(300):
        x = complex(rng.normal(), rng.normal())
        y = complex(rng.normal(), rng.normal())
        if abs(y) < 1e-6:
            continue
        assert abs((x * y) / y - x) <= 1e-12 * max(1.0, abs(x))


def test_complex_sqrt_principal_branch():
    rng = np.random.default_rng(13)
    for _ in range(200):
        z = complex(rng.normal(), rng.normal())
        assert cmath.sqrt(z).real >= 0.0
    # negative real axis: the +i root
    assert cmath.sqrt(-4.0 + 0j) == 2j
    for x in (-1.0, -2.5, -100.0):
        root = cmath.sqrt(complex(x, 0.0))
        assert root.imag >= 0.0 and abs(root.real) < 1e-15
        assert abs(root * root - x) <= 1e-12 * abs(x)


def test_omega_constant():
    assert OMEGA == pytest.approx(2 * math.pi, rel=0)
