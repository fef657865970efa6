"""Spurious reflection at the interface between element sizes l and L = alpha*l.

A unit incident wave exp(i*(beta_in*j*l - omega*k*dt)) arriving from the
uniform left region produces a reflected wave A_re*exp(i*(-beta_in*j*l -
omega*k*dt)) and a transmitted wave A_tr*exp(i*(beta_tr*j*L - omega*k*dt)),
with displacement compatibility 1 + A_re = A_tr at the interface node.

Writing the interface-node equilibrium (left element of length l plus right
element of length L assembled from the two-node element matrices) in terms
of the nodal displacement amplitudes U_-1, U_0, U_+1 and eliminating the
velocity/acceleration amplitudes through the time-integration eigenvector
gives

    A_re = -(CA*exp(-i*beta_in*l) + CB + CC*exp(i*beta_tr*L))
          / (CA*exp(+i*beta_in*l) + CB + CC*exp(i*beta_tr*L))

with complex coefficients CA = A_bar + i*A_star, CB = B_bar + i*B_star,
CC = C_bar + i*C_star:

    A_bar = -1 + 4*psi1*M2*g          A_star =  2*psi2*s
    B_bar = (1 + 1/alpha)
            + 4*psi1*M1*g*(1 + alpha) B_star = -2*psi2*s*(1 + 1/alpha)
    C_bar = -1/alpha + 4*psi1*alpha*M2*g
                                      C_star = (2/alpha)*psi2*s

where g = (cos(w*dt) - 1)/(1 + cos(w*dt)) and s = sin(w*dt)/(1 + cos(w*dt)).

The B_bar mass factor is (1 + alpha): the interface node carries half-masses
M1*rho*l from the left element and M1*rho*L = alpha*M1*rho*l from the right
one.  A variant with (1 + 1/alpha) circulates in print; it contradicts the
element assembly and the measured reflection of the time-domain simulator,
and is available only behind the ``printed_b_bar`` diagnostic flag.

The transmitted propagation constant beta_tr*L is the dispersion solution of
the right-side mesh, i.e. the same closed form evaluated at mesh parameter
b/alpha (equivalently psi1 -> alpha**2*psi1).

At alpha = 1 the numerator is proportional to
cos(beta_in*l)*(D2 + i*F1) - (D1 + i*F1), which the dispersion relation
annihilates identically: a uniform mesh reflects nothing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .core import WaveSetting
from .dispersion import cos_numerical_wavenumber


class SingularConfigurationError(ArithmeticError):
    """The reflection denominator vanished; the setting has no propagating solution."""


@dataclass(frozen=True)
class InterfaceCoefficients:
    """The six real interface-equilibrium coefficients.

    Distinct from the continuum quantities of the same name: these weight the
    nodal amplitudes U_-1 (a_bar + i*a_star), U_0 (b_bar + i*b_star) and
    U_+1 (c_bar + i*c_star) in the interface-node equilibrium.
    """

    a_bar: float
    a_star: float
    b_bar: float
    b_star: float
    c_bar: float
    c_star: float

    @property
    def ca(self) -> complex:
        return complex(self.a_bar, self.a_star)

    @property
    def cb(self) -> complex:
        return complex(self.b_bar, self.b_star)

    @property
    def cc(self) -> complex:
        return complex(self.c_bar, self.c_star)


@dataclass(frozen=True)
class ReflectionResult:
    """Complex spurious-reflection amplitude and its practical magnitude."""

    a_re: complex
    a_tr: complex
    magnitude_pct: float


def interface_coefficients(setting: WaveSetting, printed_b_bar: bool = False) -> InterfaceCoefficients:
    """Interface-equilibrium coefficients for element-size ratio alpha.

    ``printed_b_bar=True`` selects the circulated variant with mass factor
    (1 + 1/alpha) on the B_bar term (diagnostic only, see module docstring).
    """
    alpha = setting.alpha
    if not (alpha > 0.0):
        raise ValueError(f"element-size ratio alpha must be positive, got {alpha}")
    psi1, psi2 = setting.psi1, setting.psi2
    m1, m2 = setting.mass.m1, setting.mass.m2
    cw = math.cos(setting.omega_dt)
    sw = math.sin(setting.omega_dt)
    g = (cw - 1.0) / (1.0 + cw)
    s = sw / (1.0 + cw)
    mass_factor = (1.0 + 1.0 / alpha) if printed_b_bar else (1.0 + alpha)
    return InterfaceCoefficients(
        a_bar=-1.0 + 4.0 * psi1 * m2 * g,
        a_star=2.0 * psi2 * s,
        b_bar=(1.0 + 1.0 / alpha) + 4.0 * psi1 * m1 * g * mass_factor,
        b_star=-2.0 * psi2 * s * (1.0 + 1.0 / alpha),
        c_bar=-1.0 / alpha + 4.0 * psi1 * alpha * m2 * g,
        c_star=(2.0 / alpha) * psi2 * s,
    )


def _complex_sine(cos_bl: complex) -> complex:
    """sin(beta*l) on the forward-decaying branch, from cos(beta*l).

    sin(d + i*h) = sin(d)*cosh(h) + i*cos(d)*sinh(h) has non-negative real
    part for d in [0, pi], h >= 0, which the principal square root of
    1 - cos**2 already selects; only the deep stopband d = pi (cos < -1)
    needs its imaginary part flipped.
    """
    sine = cmath.sqrt(1.0 - cos_bl * cos_bl)
    if cos_bl.real < -1.0 and sine.real == 0.0:
        sine = complex(0.0, -sine.imag)
    return sine


def reflection_amplitude(setting: WaveSetting, printed_b_bar: bool = False) -> ReflectionResult:
    """Complex spurious-reflection amplitude A_re of the graded mesh.

    Direct complex evaluation: exp(+-i*beta_in*l) and exp(i*beta_tr*L) are
    formed as cos +- i*sin of the propagation constants, with the cosines
    taken straight from the dispersion relation of each region.  That keeps
    the alpha = 1 numerator identity (and hence the null reflection of a
    uniform mesh) exact to round-off.  The transmitted amplitude is 1 + A_re
    by displacement compatibility; magnitude_pct = 100*|A_re|.

    Raises
    ------
    ValueError
        If a, b or b/alpha violates the sampling limit.
    SingularConfigurationError
        If the denominator vanishes (not reached for admissible settings).
    """
    z_in = cos_numerical_wavenumber(setting)
    right = setting.with_mesh_parameter(setting.b / setting.alpha)
    z_tr = cos_numerical_wavenumber(right)
    sin_in = _complex_sine(z_in)
    sin_tr = _complex_sine(z_tr)
    e_minus = z_in - 1j * sin_in
    e_plus = z_in + 1j * sin_in
    e_tr = z_tr + 1j * sin_tr
    coeff = interface_coefficients(setting, printed_b_bar=printed_b_bar)
    num = coeff.ca * e_minus + coeff.cb + coeff.cc * e_tr
    den = coeff.ca * e_plus + coeff.cb + coeff.cc * e_tr
    if abs(den) < 1e-300:
        raise SingularConfigurationError(
            f"reflection denominator vanished for a={setting.a:g}, b={setting.b:g}, "
            f"gamma={setting.gamma:g}, alpha={setting.alpha:g}"
        )
    a_re = -num / den
    return ReflectionResult(a_re=a_re, a_tr=1.0 + a_re, magnitude_pct=100.0 * abs(a_re))


def _sine_parts(d_re: float, f_mag: float) -> tuple[float, float]:
    """(G, H) with sin(beta*l) = G + i*H from cos(beta*l) = D - i*F_mag.

    From sin**2 + cos**2 = 1: G**2 - H**2 = 1 - D**2 + F**2 and G*H = D*F,
    so H**2 = (-(1 - D**2 + F**2) + sqrt((1 - D**2 + F**2)**2 + 4*D**2*F**2))/2
    (note the square root of that expression must be taken to get H) and
    G = D*F/H.  The F = 0 limit needs G = sqrt(1 - D**2) directly.
    """
    r = 1.0 - d_re * d_re + f_mag * f_mag
    h_sq = (-r + math.sqrt(r * r + 4.0 * d_re * d_re * f_mag * f_mag)) / 2.0
    h = math.sqrt(max(h_sq, 0.0))
    if h > 0.0:
        g = d_re * f_mag / h
    else:
        g = math.sqrt(max(r, 0.0))
    return g, h


def reflection_magnitude_expanded(setting: WaveSetting, printed_b_bar: bool = False) -> float:
    """|A_re| through the expanded real-arithmetic route (cross-check).

    Uses the magnitude convention cos(beta*l) = D - i*F with F = |Im cos|
    (equivalent to the forward-decaying branch, since the direct form has a
    non-positive imaginary part), the corrected sine components of
    ``_sine_parts`` and the four real work terms

        d1 + i*d2 = numerator,  d3 + i*d4 = denominator

    of the reflection quotient.  Must agree with ``reflection_amplitude`` to
    near machine precision; asserted in the tests.
    """
    z_in = cos_numerical_wavenumber(setting)
    right = setting.with_mesh_parameter(setting.b / setting.alpha)
    z_tr = cos_numerical_wavenumber(right)
    d_in, f_in = z_in.real, -z_in.imag
    d_tr, f_tr = z_tr.real, -z_tr.imag
    g_in, h_in = _sine_parts(d_in, f_in)
    g_tr, h_tr = _sine_parts(d_tr, f_tr)

    c = interface_coefficients(setting, printed_b_bar=printed_b_bar)
    ab, as_, bb, bs = c.a_bar, c.a_star, c.b_bar, c.b_star
    cb, cs = c.c_bar, c.c_star

    d1 = ab * d_in + as_ * g_in + bb + cb * d_tr - cs * g_tr + as_ * f_in + ab * h_in + cs * f_tr - cb * h_tr
    d2 = -ab * f_in + as_ * h_in - cb * f_tr - cs * h_tr + as_ * d_in - ab * g_in + bs + cs * d_tr + cb * g_tr
    d3 = ab * d_in - as_ * g_in + bb + cb * d_tr - cs * g_tr + as_ * f_in - ab * h_in + cs * f_tr - cb * h_tr
    d4 = -ab * f_in - as_ * h_in - cb * f_tr - cs * h_tr + as_ * d_in + ab * g_in + bs + cs * d_tr + cb * g_tr

    den = d3 * d3 + d4 * d4
    if den < 1e-300:
        raise SingularConfigurationError("reflection denominator vanished in expanded form")
    return 100.0 * math.sqrt((d1 * d3 + d2 * d4) ** 2 + (d2 * d3 - d1 * d4) ** 2) / den
