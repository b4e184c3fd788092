"""Effective asymptotic constants and nearest singularities."""

from __future__ import annotations

from ..numeric.context import digits_of
from ..numeric.polynomial import Polynomial, min_modulus, poly_roots
from .families import (
    ExpSeriesApproximant,
    OffsetReciprocalApproximant,
    PadeReciprocalApproximant,
    context_of,
)

EFFECTIVE = ("sakiadis", "blasius", "fp")


def effective_constant(problem: str, a, x):
    """Effective far-field constant of approximant ``a`` at ``x``.

    sakiadis: ``G_eff = (f - C) exp(C x / 2)``
    blasius:  ``Q_eff = exp(x**2 / 4 + B x / 2) f''``
    fp:       ``D_eff = u exp(x) sqrt(x)`` (x > 0)

    A plateau over increasing ``x`` estimates the constant itself.
    """
    ctx = context_of(a.A[1])
    x = ctx.mpf(x)
    j = a.evaluate(x)
    if problem == "sakiadis":
        C = a.C if isinstance(a, ExpSeriesApproximant) else a.offset_const
        return (j.v - C) * ctx.exp(x * C / 2)
    if problem == "blasius":
        B = a.offset_const
        return ctx.exp(x * x / 4 + B * x / 2) * j.d2
    if problem == "fp":
        if not x > 0:
            raise ValueError("D_eff needs x > 0")
        return j.v * ctx.exp(x) * ctx.sqrt(x)
    raise ValueError(f"unknown problem {problem!r}; expected one of {EFFECTIVE}")


def effective_plateau(problem: str, a, lo, hi, count: int = 200) -> tuple:
    """Flattest point of the effective constant on ``[lo, hi]``.

    Returns ``(x, value)`` at the interior grid point where the central
    difference of the effective constant is smallest in magnitude.
    """
    ctx = context_of(a.A[1])
    lo, hi = ctx.mpf(lo), ctx.mpf(hi)
    xs = [lo + (hi - lo) * k / (count - 1) for k in range(count)]
    vals = [effective_constant(problem, a, x) for x in xs]
    best = min(range(1, count - 1), key=lambda k: abs(vals[k + 1] - vals[k - 1]))
    return xs[best], vals[best]


def denominator_polynomial(a) -> Polynomial:
    if not isinstance(a, (OffsetReciprocalApproximant, PadeReciprocalApproximant)):
        raise TypeError("only reciprocal-form approximants have a denominator")
    return Polynomial(a.A)


def singularity_radius(a, ctx=None) -> tuple:
    """Nearest complex singularity ``(S, eta_s)`` of a reciprocal approximant.

    The roots of ``1 + sum A_n x**n`` are found with :func:`poly_roots`; the
    one of least modulus is returned with its modulus.
    """
    ctx = ctx or context_of(a.A[-1])
    p = denominator_polynomial(a)
    if p.degree < 1:
        raise ValueError("denominator has no roots")
    tol = ctx.mpf(10) ** (10 - digits_of(ctx))
    root = min_modulus(poly_roots(p, tol, ctx))
    return abs(root), root
