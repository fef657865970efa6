"""viscowave: dispersion, numerical damping and spurious reflection of the
two-node FEM / average-acceleration discretization of the 1D viscoelastic
wave equation, with a time-domain simulator for cross-validation."""

__version__ = "0.1.0"

from .core import CONSISTENT, LUMPED, MassModel, WaveSetting, derived_groups, mass_model
from .continuum import ContinuumWave, continuum_wavenumber
from .dispersion import (
    DispersionErrors,
    NumericalWave,
    cos_numerical_wavenumber,
    dispersion_errors,
    eigenvector_amplitudes,
    invert_transcendental,
    numerical_wave,
)
from .reflection import (
    InterfaceCoefficients,
    ReflectionResult,
    interface_coefficients,
    reflection_amplitude,
    reflection_magnitude_expanded,
)
from .simulator import BarMesh, MeasurementError, SimConfig, SimRecord, assemble, plan_run, run

__all__ = [
    "CONSISTENT",
    "LUMPED",
    "MassModel",
    "WaveSetting",
    "derived_groups",
    "mass_model",
    "ContinuumWave",
    "continuum_wavenumber",
    "DispersionErrors",
    "NumericalWave",
    "cos_numerical_wavenumber",
    "dispersion_errors",
    "eigenvector_amplitudes",
    "invert_transcendental",
    "numerical_wave",
    "InterfaceCoefficients",
    "ReflectionResult",
    "interface_coefficients",
    "reflection_amplitude",
    "reflection_magnitude_expanded",
    "BarMesh",
    "MeasurementError",
    "SimConfig",
    "SimRecord",
    "assemble",
    "plan_run",
    "run",
    "__version__",
]
