"""Continuum viscoelastic wave: characteristic-equation residual and limits."""

import cmath
import math

import numpy as np
import pytest

from viscowave.core import OMEGA, V_REF, WaveSetting
from viscowave.continuum import continuum_wavenumber, dispersion_residual

# frozen from 50-digit evaluation at gamma = 0.1
A_STAR_G01 = 6.1915987570641193
B_STAR_G01 = 0.61308909728618022
V_G01 = 1.0147920680439724
THETA_G01 = 0.19739555984988076


def _setting(gamma):
    return WaveSetting(a=100, b=100, gamma=gamma)


def test_elastic_limit_exact():
    wave = continuum_wavenumber(_setting(0.0))
    assert wave.a_star == OMEGA
    assert wave.b_star == 0.0
    assert wave.velocity == V_REF
    assert wave.theta == 0.0 and wave.rho_c == 1.0


def test_frozen_values_gamma_01():
    wave = continuum_wavenumber(_setting(0.1))
    assert wave.a_star == pytest.approx(A_STAR_G01, rel=1e-14)
    assert wave.b_star == pytest.approx(B_STAR_G01, rel=1e-14)
    assert wave.velocity == pytest.approx(V_G01, rel=1e-14)
    assert wave.theta == pytest.approx(THETA_G01, rel=1e-14)


def test_damping_raises_phase_velocity():
    wave = continuum_wavenumber(_setting(0.1))
    assert wave.velocity > V_REF


def test_velocity_wavenumber_identity():
    for gamma in (0.0, 0.01, 0.3, 1.0):
        wave = continuum_wavenumber(_setting(gamma))
        assert wave.velocity * wave.a_star == pytest.approx(OMEGA, rel=1e-15)


def test_characteristic_residual_random():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        s = _setting(float(rng.uniform(0.0, 1.0)))
        assert dispersion_residual(continuum_wavenumber(s), s) < 1e-12


def test_theta_matches_arccos_form():
    for gamma in (0.001, 0.05, 0.2, 0.5, 1.0):
        wave = continuum_wavenumber(_setting(gamma))
        wc = 2 * gamma
        theta_arccos = math.acos(math.sqrt(1 + wc * wc) / (1 + wc * wc))
        assert wave.theta == pytest.approx(theta_arccos, abs=1e-12)


def test_polar_cartesian_consistency():
    for gamma in (0.001, 0.1, 0.4, 1.0):
        wave = continuum_wavenumber(_setting(gamma))
        wc = 2 * gamma
        cartesian = complex(1 / (1 + wc * wc), wc / (1 + wc * wc))
        polar = wave.rho_c * cmath.exp(1j * wave.theta)
        assert abs(cartesian - polar) < 1e-14


def test_attenuation_strictly_increasing_in_gamma():
    # b_star grows with damping up to its maximum at omega*c = sqrt(3),
    # i.e. gamma = sqrt(3)/2; monotone on the rising side
    gammas = np.linspace(0.01, 0.85, 60)
    b_stars = [continuum_wavenumber(_setting(float(g))).b_star for g in gammas]
    assert all(b2 > b1 for b1, b2 in zip(b_stars, b_stars[1:]))


def test_attenuation_peaks_at_critical_damping():
    peak = math.sqrt(3) / 2
    below = continuum_wavenumber(_setting(peak - 1e-4)).b_star
    at = continuum_wavenumber(_setting(peak)).b_star
    above = continuum_wavenumber(_setting(peak + 1e-4)).b_star
    assert at > below and at > above
