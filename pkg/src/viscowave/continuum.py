"""Exact dispersion of the continuum viscoelastic wave.

The governing equation u'' + c*u_dot'' - u_ddot/v_r**2 = 0 (primes: space
derivatives, dots: time derivatives; Kelvin-Voigt damping proportional to
stiffness) admits harmonic solutions exp(i*(beta*x - omega*t)) whose complex
wave number satisfies

    beta**2 * (1 - i*omega*c) - (omega/v_r)**2 = 0.

The positive-direction root beta = A* + i*B* gives a dispersive, evanescent
wave: phase velocity v = omega/A* and spatial decay exp(-B*x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import OMEGA, V_REF, WaveSetting


@dataclass(frozen=True)
class ContinuumWave:
    """Positive-direction continuum wave characteristics.

    Attributes
    ----------
    a_star : float
        Wave number (real part of beta), 1/length.
    b_star : float
        Spatial attenuation (imaginary part of beta), 1/length.
    velocity : float
        Phase velocity omega/a_star.
    rho_c : float
        Modulus of the complex compliance factor 1/(1 - i*omega*c).
    theta : float
        Its phase angle, arctan(omega*c), in [0, pi/2).
    """

    a_star: float
    b_star: float
    velocity: float
    rho_c: float
    theta: float

    @property
    def wavenumber(self) -> complex:
        return complex(self.a_star, self.b_star)


def continuum_wavenumber(setting: WaveSetting) -> ContinuumWave:
    """Exact complex wave number of the continuum viscoelastic wave.

    Parameters
    ----------
    setting : WaveSetting
        Only gamma is used (omega*c = 2*gamma in normalized units).

    Returns
    -------
    ContinuumWave
        The root with positive real part.  For gamma = 0 this reduces to the
        elastic limit a_star = omega/v_r, b_star = 0, velocity = v_r.
    """
    wc = setting.omega_c
    # arctan avoids the precision loss of the equivalent arccos form near wc = 0
    theta = math.atan(wc)
    rho_c = 1.0 / math.sqrt(1.0 + wc * wc)
    scale = (OMEGA / V_REF) * (1.0 + wc * wc) ** -0.25
    a_star = scale * math.cos(0.5 * theta)
    b_star = scale * math.sin(0.5 * theta)
    return ContinuumWave(
        a_star=a_star,
        b_star=b_star,
        velocity=OMEGA / a_star,
        rho_c=rho_c,
        theta=theta,
    )


def dispersion_residual(wave: ContinuumWave, setting: WaveSetting) -> float:
    """Relative residual of the characteristic equation at the returned root.

    |beta**2 * (1 - i*omega*c) - (omega/v_r)**2| / (omega/v_r)**2 — zero for
    an exact root, used as the structural test of continuum_wavenumber.
    """
    beta = wave.wavenumber
    k0_sq = (OMEGA / V_REF) ** 2
    return abs(beta * beta * (1.0 - 1j * setting.omega_c) - k0_sq) / k0_sq
