"""Closed-form numerical dispersion of the two-node FEM / Newmark scheme.

Substituting the discrete plane wave

    u_(j,k)      = A * exp(i*(beta_n*j*l - omega*k*dt))
    u_dot_(j,k)  = B * exp(...)
    u_ddot_(j,k) = C * exp(...)

into the nodal equilibrium stencil and the two average-acceleration
difference relations yields a homogeneous 3x3 system in (A, B*dt, C*dt**2).
Its vanishing determinant fixes the complex propagation constant per
element,

    cos(beta_n*l) = (D1 + i*F1) / (D2 + i*F1) = D + i*F,

with

    D1 = -[(cos(w*dt) + 1)/4 + psi1*M1*(cos(w*dt) - 1)]
    D2 =  [-(cos(w*dt) + 1)/4 + psi1*M2*(cos(w*dt) - 1)]
    F1 = psi2*sin(w*dt)/2.

Inverting the transcendental relation gives beta_n*l = d + i*h: d/l is the
numerical wave number, h/l the numerical attenuation per unit length.

Note on the inversion: writing X = cos(d)**2 and Y = cosh(h)**2, the
identities cos(d)*cosh(h) = D and sin(d)*sinh(h) = -F give X*Y = D**2 and
X + Y = 1 + D**2 + F**2, so X and Y are the two roots of

    t**2 - (1 + D**2 + F**2)*t + D**2 = 0.

The discriminant is therefore (1 + D**2 + F**2)**2 - 4*D**2; the same
expression *without* the square on the first term fails even the undamped
sanity case (F = 0 must give cos d = |D|, h = 0 for |D| <= 1) and is kept
only behind the ``printed_radicand`` diagnostic flag to document the
discrepancy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .core import WaveSetting
from .continuum import continuum_wavenumber

#: Spatial/temporal sampling limit: fewer than two samples per period or per
#: wavelength puts the scheme beyond its Nyquist range.
NYQUIST_LIMIT = 2.0


@dataclass(frozen=True)
class NumericalWave:
    """Complex propagation constant of the discrete scheme, per element.

    d is the phase increment per element in (0, pi], h >= 0 the attenuation
    per element; cos_bl = cos(d + i*h) is the transcendental image D + i*F;
    amp_vel and amp_acc are the eigenvector amplitudes B*dt and C*dt**2 for
    unit displacement amplitude.
    """

    d: float
    h: float
    cos_bl: complex
    amp_vel: complex
    amp_acc: complex


@dataclass(frozen=True)
class DispersionErrors:
    """Percentage errors of the scheme against the continuum wave.

    vel_err_pct  = 100*(d/l - A*)/(d/l)   (relative wave-velocity error)
    damp_err_pct = 100*(B* - h/l)/B*      (relative damping error; None when
                                           gamma = 0, since then B* = 0)
    """

    vel_err_pct: float
    damp_err_pct: Optional[float]


def _check_sampling(setting: WaveSetting) -> None:
    if setting.a <= NYQUIST_LIMIT or setting.b <= NYQUIST_LIMIT:
        raise ValueError(
            f"mesh parameter below Nyquist limit: need a > {NYQUIST_LIMIT:g} and "
            f"b > {NYQUIST_LIMIT:g}, got a={setting.a:g}, b={setting.b:g}"
        )


def cos_numerical_wavenumber(setting: WaveSetting) -> complex:
    """cos(beta_n*l) = D + i*F of the discrete dispersion relation.

    Evaluated through the explicit real-arithmetic expansion of the complex
    quotient (D1 + i*F1)/(D2 + i*F1); the two forms agree to machine
    precision and the quotient is asserted against this in the tests.

    Raises
    ------
    ValueError
        If a <= 2 or b <= 2 (sampling below the Nyquist limit).
    """
    _check_sampling(setting)
    psi1, psi2 = setting.psi1, setting.psi2
    m1, m2 = setting.mass.m1, setting.mass.m2
    cw = math.cos(setting.omega_dt)
    sw = math.sin(setting.omega_dt)

    d1 = -((cw + 1.0) / 4.0 + psi1 * m1 * (cw - 1.0))
    d2 = -(cw + 1.0) / 4.0 + psi1 * m2 * (cw - 1.0)
    f1 = psi2 * sw / 2.0

    denom = d2 * d2 + f1 * f1
    d_re = (d1 * d2 + psi2 * psi2 * sw * sw / 4.0) / denom
    f_im = (psi1 * psi2 * (cw - 1.0) * (m1 + m2) * sw / 2.0) / denom
    return complex(d_re, f_im)


def transcendental_coefficients(setting: WaveSetting) -> tuple[float, float, float]:
    """(D1, D2, F1) of the dispersion quotient, exposed for cross-checks."""
    _check_sampling(setting)
    psi1, psi2 = setting.psi1, setting.psi2
    m1, m2 = setting.mass.m1, setting.mass.m2
    cw = math.cos(setting.omega_dt)
    sw = math.sin(setting.omega_dt)
    d1 = -((cw + 1.0) / 4.0 + psi1 * m1 * (cw - 1.0))
    d2 = -(cw + 1.0) / 4.0 + psi1 * m2 * (cw - 1.0)
    f1 = psi2 * sw / 2.0
    return d1, d2, f1


def invert_transcendental(cos_bl: complex, printed_radicand: bool = False) -> tuple[float, float]:
    """Solve cos(d + i*h) = D + i*F for d in [0, pi] and h >= 0.

    Returns the forward-decaying branch: sin(d)*sinh(h) = -F, which is the
    physical branch since F <= 0 for all admissible settings.  For F = 0 and
    |D| > 1 (stopband) the result is d in {0, pi} with h > 0.

    Evaluation detail: substituting t = 1 + sigma (sigma = sinh(h)**2) into
    the quadratic t**2 - (1 + D**2 + F**2)*t + D**2 = 0 for cosh(h)**2 gives

        sigma**2 + R*sigma - F**2 = 0,      R = 1 - D**2 - F**2,

    whose positive root is evaluated in the cancellation-free conjugate form
    2*F**2/(sqrt(R**2 + 4*F**2) + R) for R > 0.  This is algebraically the
    same root selection as the corrected discriminant form but keeps the
    round-trip reconstruction at machine precision even when h is tiny.

    ``printed_radicand=True`` evaluates the defective variant whose inner
    discriminant is (1 + D**2 + F**2) - 4*D**2 instead of the square of the
    first term; it is provided only to demonstrate that this variant fails
    the undamped sanity case (it yields cosh(h) < 1 there).
    """
    d_re, f_im = cos_bl.real, cos_bl.imag
    if printed_radicand:
        s1 = 1.0 + d_re * d_re + f_im * f_im
        root = math.sqrt(max(s1 - 4.0 * d_re * d_re, 0.0))
        cosh_h = math.sqrt(max((s1 + root) / 2.0, 0.0))
        h = math.log(cosh_h + math.sqrt(max(cosh_h * cosh_h - 1.0, 0.0)))
        d = math.acos(min(1.0, max(-1.0, d_re / cosh_h if cosh_h > 0.0 else 1.0)))
        return d, h

    f_sq = f_im * f_im
    r = (1.0 - d_re) * (1.0 + d_re) - f_sq  # 1 - D**2 - F**2 without cancellation
    disc_root = math.sqrt(r * r + 4.0 * f_sq)
    if r > 0.0:
        sinh_sq = 2.0 * f_sq / (disc_root + r)
    else:
        sinh_sq = 0.5 * (disc_root - r)
    sinh_h = math.sqrt(sinh_sq)
    cosh_h = math.sqrt(1.0 + sinh_sq)
    h = math.log(sinh_h + cosh_h)
    d = math.acos(min(1.0, max(-1.0, d_re / cosh_h)))
    return d, h


def eigenvector_amplitudes(omega_dt: float) -> tuple[complex, complex]:
    """Velocity and acceleration amplitudes (B*dt, C*dt**2) per unit displacement.

    These make the discrete harmonic triple satisfy both average-acceleration
    difference relations identically:

        B*dt    = -2i*sin(w*dt) / (cos(w*dt) + 1)
        C*dt**2 =  4*(cos(w*dt) - 1) / (cos(w*dt) + 1)

    Raises
    ------
    ValueError
        If omega_dt is outside (0, pi); at pi the denominator vanishes.
    """
    if not (0.0 < omega_dt < math.pi):
        raise ValueError(f"omega*dt must lie in (0, pi), got {omega_dt:g}")
    cw = math.cos(omega_dt)
    sw = math.sin(omega_dt)
    return (-2j * sw / (cw + 1.0), complex(4.0 * (cw - 1.0) / (cw + 1.0), 0.0))


def numerical_wave(setting: WaveSetting) -> NumericalWave:
    """Full numerical-wave description (propagation constant plus eigenvector)."""
    cos_bl = cos_numerical_wavenumber(setting)
    d, h = invert_transcendental(cos_bl)
    amp_vel, amp_acc = eigenvector_amplitudes(setting.omega_dt)
    return NumericalWave(d=d, h=h, cos_bl=cos_bl, amp_vel=amp_vel, amp_acc=amp_acc)


def dispersion_errors(setting: WaveSetting) -> DispersionErrors:
    """Percentage velocity and damping errors of the scheme (see DispersionErrors).

    The damping error is undefined for gamma = 0 (the continuum attenuation
    vanishes) and is returned as None in that case.
    """
    wave = numerical_wave(setting)
    cont = continuum_wavenumber(setting)
    beta_n = wave.d / setting.ell
    vel_err = 100.0 * (beta_n - cont.a_star) / beta_n
    if setting.gamma > 0.0:
        damp_err = 100.0 * (cont.b_star - wave.h / setting.ell) / cont.b_star
    else:
        damp_err = None
    return DispersionErrors(vel_err_pct=vel_err, damp_err_pct=damp_err)


def dispersion_matrix(setting: WaveSetting, cos_bl: complex) -> list[list[complex]]:
    """The homogeneous 3x3 system in (A, B*dt, C*dt**2) at a given cos(beta_n*l).

    Its determinant vanishes exactly when cos_bl solves the dispersion
    relation; exposed for the structural determinant test.
    """
    psi1, psi2 = setting.psi1, setting.psi2
    m1, m2 = setting.mass.m1, setting.mass.m2
    cw = math.cos(setting.omega_dt)
    sw = math.sin(setting.omega_dt)
    return [
        [1.0 - cos_bl, psi2 * (1.0 - cos_bl), psi1 * (m2 * cos_bl + m1)],
        [0.0, complex(cw - 1.0), 0.5j * sw],
        [complex(cw - 1.0), 0.0, complex(-(cw + 1.0) / 4.0)],
    ]


def determinant3(m: list[list[complex]]) -> complex:
    """Determinant of a 3x3 complex matrix (direct cofactor expansion)."""
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def roundtrip_error(cos_bl: complex, d: float, h: float) -> float:
    """|cos(d + i*h) - cos_bl| — the inversion quality metric."""
    return abs(cmath.cos(complex(d, h)) - cos_bl)
