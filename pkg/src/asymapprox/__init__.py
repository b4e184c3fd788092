"""Asymptotic approximants for nonlinear boundary-value problems.

The package builds closed-form approximants whose Taylor expansion matches
a power series at one end of the domain and whose form matches the known
asymptotic behaviour at the other. Unknown constants (wall shear,
far-field offsets, centre values) are predicted by forcing the highest
approximant coefficients to vanish. Independent shooting oracles and
series diagnostics check the results.
"""

from __future__ import annotations

from . import approximants, errors, numeric, problems, reference, series
from .errors import ApproximantError, NonConvergence
from .numeric.context import DEFAULT_DIGITS, get_context

__version__ = "0.1.0"

__all__ = [
    "ApproximantError",
    "DEFAULT_DIGITS",
    "NonConvergence",
    "approximants",
    "errors",
    "get_context",
    "numeric",
    "problems",
    "reference",
    "series",
]
