"""Exact computations for finite-type knot invariants.

Discrete exponential and logarithm of power series, Conway polynomials and
their primitive coefficients from Seifert matrices, and the mod-2
Hamiltonian-cycle weight system on chord and Jacobi diagrams.
"""

from .errors import ValidationError, VerificationError

__version__ = "0.1.0"

__all__ = ["ValidationError", "VerificationError", "__version__"]
