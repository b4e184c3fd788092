"""Working-precision arithmetic, jets, polynomials and small solvers."""

from __future__ import annotations

from .context import DEFAULT_DIGITS, MIN_DIGITS, digits_of, get_context, scalar_str, to_scalar
from .jet import Jet2
from .linalg import linear_fit, vandermonde_apply, vandermonde_solve
from .newton import NewtonResult, newton_2d
from .polynomial import Polynomial, min_modulus, poly_roots, real_roots

__all__ = [
    "DEFAULT_DIGITS",
    "MIN_DIGITS",
    "Jet2",
    "NewtonResult",
    "Polynomial",
    "digits_of",
    "get_context",
    "linear_fit",
    "min_modulus",
    "newton_2d",
    "poly_roots",
    "real_roots",
    "scalar_str",
    "to_scalar",
    "vandermonde_apply",
    "vandermonde_solve",
]
