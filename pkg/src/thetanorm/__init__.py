"""Exact combinatorial verification of the bounded volume class of H^2 x H^2."""

from .circle_core import Configuration, CyclicArrangement
from .cochains import Cochain
from .kernels import BACKEND
from .theta import theta_cochain, theta_full, theta_reduced

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Cochain",
    "Configuration",
    "CyclicArrangement",
    "theta_cochain",
    "theta_full",
    "theta_reduced",
]
