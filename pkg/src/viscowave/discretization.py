"""Two-node element matrices, nodal equilibrium stencil and the two-step
average-acceleration difference relations.

These are the building blocks shared by the closed-form dispersion analysis
and the time-domain simulator; the residual functions let tests verify that
both agree on what the discrete equations actually are.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import MassModel, WaveSetting

# Stiffness / damping share the same 2x2 pattern; damping is c times stiffness.
_PATTERN = np.array([[1.0, -1.0], [-1.0, 1.0]])

State = tuple[float, float, float]  # (u, u_dot, u_ddot) at one time level


@dataclass(frozen=True)
class ElementMatrices:
    """Stiffness k (factor E/l), damping c_mat (factor c*E/l) and mass m (factor rho*l)."""

    k: np.ndarray
    c_mat: np.ndarray
    m: np.ndarray


def element_matrices(
    mass: MassModel,
    length: float,
    e_mod: float = 1.0,
    density: float = 1.0,
    damping_c: float = 0.0,
) -> ElementMatrices:
    """2x2 matrices of one two-node element.

    k = (E/l)*[[1,-1],[-1,1]], c_mat = c*k, m = rho*l*[[m1,m2],[m2,m1]].

    Raises
    ------
    ValueError
        For non-positive length, modulus or density, or negative damping.
    """
    if length <= 0.0:
        raise ValueError(f"element length must be positive, got {length}")
    if e_mod <= 0.0:
        raise ValueError(f"elastic modulus must be positive, got {e_mod}")
    if density <= 0.0:
        raise ValueError(f"density must be positive, got {density}")
    if damping_c < 0.0:
        raise ValueError(f"damping constant must be >= 0, got {damping_c}")
    k = (e_mod / length) * _PATTERN
    return ElementMatrices(k=k, c_mat=damping_c * k, m=density * length * np.array(
        [[mass.m1, mass.m2], [mass.m2, mass.m1]]))


def stencil_residual(
    u: Sequence[float],
    u_dot: Sequence[float],
    u_ddot: Sequence[float],
    setting: WaveSetting,
) -> float:
    """Equilibrium residual of an interior node of the uniform mesh.

    Inputs are the nodal values at (j-1, j, j+1), evaluated in the normalized
    units (E = rho = 1, l = setting.ell, c = setting.damping_c):

        {-u_-1 + 2u_0 - u_+1} + c*{-v_-1 + 2v_0 - v_+1}
        + l**2*{m2*a_-1 + 2*m1*a_0 + m2*a_+1}

    The damping brace carries the plain factor c, consistent with the element
    damping matrix c*K; normalizing by dt turns it into psi2 exactly as the
    dispersion system requires.
    """
    m1, m2 = setting.mass.m1, setting.mass.m2
    c = setting.damping_c
    ell = setting.ell
    stiff = -u[0] + 2.0 * u[1] - u[2]
    damp = c * (-u_dot[0] + 2.0 * u_dot[1] - u_dot[2])
    inertia = ell * ell * (m2 * u_ddot[0] + 2.0 * m1 * u_ddot[1] + m2 * u_ddot[2])
    return stiff + damp + inertia


@dataclass(frozen=True)
class NewmarkOperators:
    """Two-step form of the average-acceleration method at fixed dt.

    Encodes the two difference relations

        v_+1 - 2v_0 + v_-1 + (dt/2)*(a_-1 - a_+1)            = 0
        u_+1 - 2u_0 + u_-1 - (dt**2/4)*(a_-1 + 2a_0 + a_+1)  = 0

    which every trajectory of the one-step predictor-corrector stepper
    satisfies identically (the two forms are algebraically equivalent for
    constant dt).
    """

    dt: float

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError(f"time increment must be positive, got {self.dt}")

    def velocity_residual(self, prev: State, curr: State, nxt: State) -> float:
        return nxt[1] - 2.0 * curr[1] + prev[1] + 0.5 * self.dt * (prev[2] - nxt[2])

    def displacement_residual(self, prev: State, curr: State, nxt: State) -> float:
        return nxt[0] - 2.0 * curr[0] + prev[0] - self.dt * self.dt / 4.0 * (
            prev[2] + 2.0 * curr[2] + nxt[2]
        )

    def residuals(self, prev: State, curr: State, nxt: State) -> tuple[float, float]:
        return (
            self.velocity_residual(prev, curr, nxt),
            self.displacement_residual(prev, curr, nxt),
        )


def newmark_residuals(states: Sequence[State], dt: float) -> tuple[float, float]:
    """(velocity, displacement) residuals for states at three consecutive levels."""
    prev, curr, nxt = states
    return NewmarkOperators(dt=dt).residuals(prev, curr, nxt)
