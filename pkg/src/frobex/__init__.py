"""Exact certificates for Frobenius extensions and Gorenstein projectivity.

Coefficients are exact fields only (prime fields and the rationals); all
verdicts are produced and re-checked in exact arithmetic.
"""

from ._backend import backend_name
from .linalg import GF, QQ, Domain, Matrix, kernel_basis, rref, solve

__all__ = [
    "backend_name",
    "GF",
    "QQ",
    "Domain",
    "Matrix",
    "rref",
    "solve",
    "kernel_basis",
]
