"""Resource measures and trade-off relations for three-qubit pure states.

Amplitude index convention (fixed everywhere): ``i = 4*a + 2*b + c`` with
qubit A the most significant bit, so index 0 is ``|000>`` and 7 is ``|111>``.
"""
from triresource.config import DEFAULT_TOLERANCES, Tolerances
from triresource.errors import (
    DegenerateStateError,
    HermiticityError,
    NormalizationError,
    ParameterRangeError,
    PositivityError,
    TriangleInequalityError,
    TriresourceError,
)
from triresource.measures import ResourceProfile, profile
from triresource.states import PureState3, SamplerConfig, haar_sample, make_state, psi_alpha, psi_m, psi_theta

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "DegenerateStateError",
    "HermiticityError",
    "NormalizationError",
    "ParameterRangeError",
    "PositivityError",
    "TriangleInequalityError",
    "TriresourceError",
    "ResourceProfile",
    "profile",
    "PureState3",
    "SamplerConfig",
    "haar_sample",
    "make_state",
    "psi_alpha",
    "psi_m",
    "psi_theta",
]
