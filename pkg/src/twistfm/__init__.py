"""Exact invariants of twisted Lagrangian fibrations."""

from . import cech, fibers, lattice, linalg, mukai, plane_curves, specseq
from .errors import InputError, InvariantViolation
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "InputError",
    "InvariantViolation",
    "cech",
    "fibers",
    "lattice",
    "linalg",
    "mukai",
    "plane_curves",
    "specseq",
]
