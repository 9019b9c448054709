"""Cubic twists x^3 + y^3 = D: residue symbols, Kubota symbols, L-values and point statistics."""

from .errors import DomainError
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "DomainError", "__version__"]
