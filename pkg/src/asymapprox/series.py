"""Truncated power series about a point.

Coefficients may be any field elements (floats, mpmath reals, Fractions,
jets), which lets the same code run in exact rational test mode or carry
parameter derivatives through a recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    MismatchedExpansionPoint,
    NonpositiveLeadingCoefficient,
    ZeroLeadingCoefficient,
)
from .numeric.jet import Jet2


@dataclass(frozen=True, init=False)
class TruncatedSeries:
    """``sum_{n=0..N} coeffs[n] * (x - x0)**n``.

    Zero coefficients are stored explicitly, so ``len(coeffs) == order + 1``.
    """

    coeffs: tuple
    x0: object

    def __init__(self, coeffs: Sequence, x0=0):
        if len(coeffs) == 0:
            raise ValueError("a series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "x0", x0)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[: order + 1], self.x0)

    def map(self, f) -> "TruncatedSeries":
        return TruncatedSeries([f(c) for c in self.coeffs], self.x0)

    def _check(self, other: "TruncatedSeries") -> int:
        if self.x0 != other.x0:
            raise MismatchedExpansionPoint(f"x0 = {self.x0} vs {other.x0}")
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._check(other)
        return TruncatedSeries(
            [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], self.x0
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._check(other)
        return TruncatedSeries(
            [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)], self.x0
        )

    def __neg__(self) -> "TruncatedSeries":
        return self.map(lambda c: -c)

    def scale(self, s) -> "TruncatedSeries":
        return self.map(lambda c: c * s)

    def derivative(self) -> "TruncatedSeries":
        if self.order == 0:
            return TruncatedSeries([0 * self.coeffs[0]], self.x0)
        return TruncatedSeries(
            [k * self.coeffs[k] for k in range(1, self.order + 1)], self.x0
        )


def cauchy_product(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product series, truncated to the shorter order."""
    n = a._check(b)
    out = []
    for k in range(n + 1):
        acc = a.coeffs[0] * b.coeffs[k]
        for j in range(1, k + 1):
            acc = acc + a.coeffs[j] * b.coeffs[k - j]
        out.append(acc)
    return TruncatedSeries(out, a.x0)


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    """Series of ``1 / a`` to the order of ``a``.

    Raises ZeroLeadingCoefficient when ``a[0] == 0``.
    """
    a0 = a.coeffs[0]
    if a0 == 0:
        raise ZeroLeadingCoefficient("reciprocal needs a nonzero constant term")
    inv0 = 1 / a0
    out = [inv0]
    for n in range(1, a.order + 1):
        acc = a.coeffs[1] * out[n - 1]
        for j in range(2, n + 1):
            acc = acc + a.coeffs[j] * out[n - j]
        out.append(-inv0 * acc)
    return TruncatedSeries(out, a.x0)


def pow_real(a: TruncatedSeries, s, ctx=None) -> TruncatedSeries:
    """Series of ``a**s`` for real ``s`` by Miller's recurrence.

    Parameters
    ----------
    ctx
        Context used for ``a[0]**s``; when omitted Python's ``**`` is used,
        and ``a[0] == 1`` is passed through unchanged (keeps Fractions exact).

    Raises NonpositiveLeadingCoefficient unless ``a[0] > 0``.
    """
    a0 = a.coeffs[0]
    if not a0 > 0:
        raise NonpositiveLeadingCoefficient("real powers need a positive constant term")
    if a0 == 1:
        head = a0
    elif ctx is not None:
        head = ctx.power(a0, s)
    else:
        head = a0**s
    out = [head]
    for n in range(1, a.order + 1):
        acc = 0
        for j in range(1, n + 1):
            acc = acc + (j * s - n + j) * a.coeffs[j] * out[n - j]
        out.append(acc / (n * a0))
    return TruncatedSeries(out, a.x0)


def evaluate(a: TruncatedSeries, x) -> Jet2:
    """Value and first two derivatives of the partial sum at ``x`` (Horner)."""
    t = x - a.x0 if isinstance(x, Jet2) else Jet2.variable(x - a.x0)
    acc = Jet2.constant(a.coeffs[-1])
    for c in reversed(a.coeffs[:-1]):
        acc = acc * t + c
    return acc
