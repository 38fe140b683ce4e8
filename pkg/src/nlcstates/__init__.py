"""Truncated Fock-space numerics for nonlinear coherent states and their relatives."""

from .fock import FockVector, DiagonalFunction
from .nlcs import NlcsSpec, NonlinearFunction, NotNlcs
from .states import StateSpec, build_state, photon_stats

__all__ = [
    "DiagonalFunction",
    "FockVector",
    "NlcsSpec",
    "NonlinearFunction",
    "NotNlcs",
    "StateSpec",
    "build_state",
    "photon_stats",
]
__version__ = "0.1.0"
