"""Working-precision contexts.

A context is an mpmath context object: ``mpmath.fp`` (hardware doubles) for
15-digit runs, otherwise a private :class:`mpmath.MPContext` whose ``dps`` is
fixed at creation. Contexts are handed to functions explicitly; nothing in
this package reads or changes mpmath's global ``mp`` settings.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath.libmp import repr_dps

DEFAULT_DIGITS = 60
MIN_DIGITS = 15


@lru_cache(maxsize=None)
def get_context(digits: int = DEFAULT_DIGITS):
    """Return the (shared, do-not-mutate) context for ``digits`` decimal digits."""
    if digits < MIN_DIGITS:
        raise ValueError(f"precision must be at least {MIN_DIGITS} digits, got {digits}")
    if digits == MIN_DIGITS:
        return mpmath.fp
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


def digits_of(ctx) -> int:
    if ctx is mpmath.fp:
        return MIN_DIGITS
    return ctx.dps


def to_scalar(ctx, value):
    """Convert ints, floats, decimal strings and Fractions into ``ctx`` reals."""
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / value.denominator
    return ctx.mpf(value)


def scalar_str(ctx, value) -> str:
    """Decimal string carrying the full working precision of ``ctx``."""
    if ctx is mpmath.fp:
        return repr(float(value))
    # repr_dps gives enough digits for an exact binary round trip
    return ctx.nstr(value, repr_dps(ctx.prec))
