"""Dimensionless problem statement shared by every other module.

All quantities are normalized to the reference harmonic wave: angular
frequency omega = 2*pi, period T = 1, reference speed v_r = sqrt(E/rho) = 1
and hence wavelength lambda = v_r*T = 1.  A problem is then fully described
by the mesh parameters

    a = T / dt        time steps per wave period,
    b = lambda / l    elements per wavelength,

the dimensionless physical damping gamma (gamma = omega*c/2 where c is the
Kelvin-Voigt damping constant), the element mass distribution and, for
graded meshes, the element-size ratio alpha = L/l of the right region to
the left one.

Derived groups used throughout:

    psi1 = rho*l**2 / (E*dt**2) = (a/b)**2
    psi2 = c / dt               = gamma*a/pi
    omega*dt = 2*pi/a
    omega*c  = 2*gamma
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# Normalization constants; every module computes in these units.
OMEGA = 2.0 * math.pi
PERIOD = 1.0
V_REF = 1.0
WAVELENGTH = 1.0

# Complex wave numbers are plain Python complex numbers.  cmath.sqrt already
# provides the principal branch required here: non-negative real part, and
# the +i root for negative real arguments.
ComplexValue = complex


@dataclass(frozen=True)
class MassModel:
    """Dimensionless element mass-matrix coefficients (diagonal m1, coupling m2).

    The admissible models put half the element mass on each node:
    m1 + m2 = 1/2.
    """

    m1: float
    m2: float

    def __post_init__(self):
        if abs(self.m1 + self.m2 - 0.5) > 1e-12:
            raise ValueError(f"mass coefficients must satisfy m1 + m2 = 1/2, got {self.m1} + {self.m2}")

    @property
    def name(self) -> str:
        return "lumped" if self.m2 == 0.0 else "consistent"


CONSISTENT = MassModel(m1=1.0 / 3.0, m2=1.0 / 6.0)
LUMPED = MassModel(m1=0.5, m2=0.0)

_MASS_BY_NAME = {"consistent": CONSISTENT, "lumped": LUMPED}


def mass_model(name: str) -> MassModel:
    """Look up a mass model by name ('consistent' or 'lumped')."""
    try:
        return _MASS_BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown mass model {name!r}; expected 'consistent' or 'lumped'") from None


@dataclass(frozen=True)
class WaveSetting:
    """Dimensionless statement of one wave-propagation problem.

    Parameters
    ----------
    a : float
        Time mesh parameter, steps per wave period (a = T/dt). Must be > 0.
    b : float
        Space mesh parameter, elements per wavelength (b = lambda/l). Must be > 0.
    gamma : float
        Physical damping, gamma = pi*psi2/a = omega*c/2. Must be >= 0.
    mass : MassModel
        Element mass distribution.
    alpha : float
        Element-size ratio L/l of the right mesh region (1 = uniform).
    """

    a: float
    b: float
    gamma: float = 0.0
    mass: MassModel = field(default=CONSISTENT)
    alpha: float = 1.0

    def __post_init__(self):
        if not (self.a > 0.0) or not math.isfinite(self.a):
            raise ValueError(f"time mesh parameter a must be positive, got {self.a}")
        if not (self.b > 0.0) or not math.isfinite(self.b):
            raise ValueError(f"space mesh parameter b must be positive, got {self.b}")
        if self.gamma < 0.0 or not math.isfinite(self.gamma):
            raise ValueError(f"physical damping gamma must be >= 0, got {self.gamma}")
        if not (self.alpha > 0.0) or not math.isfinite(self.alpha):
            raise ValueError(f"element-size ratio alpha must be positive, got {self.alpha}")

    # -- derived scales -------------------------------------------------
    @property
    def dt(self) -> float:
        """Time increment, T/a."""
        return PERIOD / self.a

    @property
    def ell(self) -> float:
        """Left-region element length, lambda/b."""
        return WAVELENGTH / self.b

    @property
    def damping_c(self) -> float:
        """Kelvin-Voigt damping constant c = gamma*T/pi."""
        return self.gamma * PERIOD / math.pi

    # -- derived dimensionless groups -----------------------------------
    @property
    def psi1(self) -> float:
        return (self.a / self.b) ** 2

    @property
    def psi2(self) -> float:
        return self.gamma * self.a / math.pi

    @property
    def omega_dt(self) -> float:
        return OMEGA / self.a

    @property
    def omega_c(self) -> float:
        return 2.0 * self.gamma

    @property
    def courant(self) -> float:
        """Courant number v_r*dt/l = b/a."""
        return self.b / self.a

    def with_mesh_parameter(self, b: float) -> "WaveSetting":
        """Same physics on a different spatial mesh (used for the graded right region)."""
        return WaveSetting(a=self.a, b=b, gamma=self.gamma, mass=self.mass, alpha=self.alpha)


def derived_groups(setting: WaveSetting) -> tuple[float, float, float, float]:
    """Return (psi1, psi2, omega*dt, omega*c) for a setting.

    psi1 = (a/b)**2 and psi2 = gamma*a/pi; the identity psi2*omega*dt = omega*c
    holds exactly.
    """
    return setting.psi1, setting.psi2, setting.omega_dt, setting.omega_c
