"""Univariate polynomials and simultaneous (Aberth-Ehrlich) rootfinding."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import NonConvergence
from .context import digits_of


@dataclass(frozen=True, init=False)
class Polynomial:
    """Polynomial with coefficients stored lowest power first.

    Trailing (highest-power) exact zeros are trimmed, so ``coeffs[-1]`` is the
    leading coefficient unless the polynomial is identically zero.
    """

    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        c = list(coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Polynomial":
        return Polynomial([c / s for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def shift_degree(self, k: int) -> "Polynomial":
        """Multiply by x**k."""
        return Polynomial([0] * k + list(self.coeffs))

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([0])
        return Polynomial([k * c for k, c in enumerate(self.coeffs) if k > 0])

    def map(self, f) -> "Polynomial":
        return Polynomial([f(c) for c in self.coeffs])

    @classmethod
    def from_roots(cls, roots, lead=1) -> "Polynomial":
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1])
        return p


def _backward_error(coeffs, z):
    # componentwise: |p(z)| / sum |c_k| |z|**k
    acc = coeffs[-1]
    mag = abs(coeffs[-1])
    az = abs(z)
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
        mag = mag * az + abs(c)
    return abs(acc) / mag


def _newton_polygon_starts(logs: list, sigma: float = 0.4) -> list:
    """Starting points ``(log r, theta)`` from the upper Newton polygon.

    ``logs[k]`` is ``log|c_k|`` (``-inf`` for a zero coefficient). Each hull
    edge from ``i`` to ``j`` contributes ``j - i`` points on a circle whose
    radius is the edge's negated slope, exponentiated.
    """
    n = len(logs) - 1
    pts = [(k, a) for k, a in enumerate(logs) if a != -math.inf]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (pt[0] - x1) * (y2 - y1) >= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    starts = []
    for (i, ai), (j, aj) in zip(hull, hull[1:]):
        m = j - i
        logr = (ai - aj) / m
        for t in range(m):
            starts.append((logr, 2 * math.pi * t / m + 2 * math.pi * i / n + sigma))
    return starts


def _double_stage(ctx, coeffs, max_iter=500):
    """Aberth iteration in complex128 on a radius-normalised copy of ``coeffs``.

    Returns starting points for the high-precision stage, or None when the
    coefficients do not fit in double range.
    """
    n = len(coeffs) - 1
    try:
        radius = ctx.power(abs(coeffs[0]) / abs(coeffs[-1]), ctx.mpf(1) / n)
        scaled = [complex(c * radius**k) for k, c in enumerate(coeffs)]
    except (OverflowError, ZeroDivisionError, ValueError):
        return None
    if any(s == 0 for s, c in zip(scaled, coeffs) if c != 0):
        return None  # a coefficient underflowed; double range is too narrow
    c = np.array(scaled[::-1], dtype=complex)
    if c[0] == 0:
        return None
    with np.errstate(all="ignore"):
        c = c / c[0]
        logs = [float(v) for v in np.log(np.abs(c[::-1]))]
    if not np.all(np.isfinite(c)):
        return None
    dc = np.polyder(c)
    starts = _newton_polygon_starts(logs)
    if any(abs(lr) > 600 for lr, _ in starts):
        return None
    z = np.array([np.exp(lr + 1j * th) for lr, th in starts])
    active = np.ones(n, dtype=bool)
    with np.errstate(all="ignore"):
        for _ in range(max_iter):
            ratio = np.polyval(c, z) / np.polyval(dc, z)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            w = ratio / (1.0 - ratio * inv.sum(axis=1))
            w = np.where(active & np.isfinite(w), w, 0.0)
            z = z - w
            active &= np.abs(w) > 1e-15 * np.maximum(1.0, np.abs(z))
            if not active.any():
                break
    if not np.all(np.isfinite(z)):
        return None
    return [ctx.mpc(float(v.real), float(v.imag)) * radius for v in z]


def poly_roots(p: Polynomial, tol, ctx, max_iter: int = 200) -> list:
    """All complex roots of ``p`` (with multiplicity) at the precision of ``ctx``.

    A double-precision Aberth pass supplies starting values which are then
    refined by Aberth steps in ``ctx`` arithmetic. Every returned root ``r``
    satisfies ``|p(r)| <= tol * sum |c_k| |r|**k`` (componentwise backward
    error). Starting values come from the Newton polygon of ``|c_k|``.

    Raises NonConvergence if the refinement does not reach ``tol``; a higher
    working precision usually fixes that.
    """
    if p.degree < 1:
        raise ValueError("poly_roots needs degree >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    coeffs = list(p.coeffs)
    zero_roots = 0
    while coeffs[0] == 0:
        coeffs.pop(0)
        zero_roots += 1
    roots = [ctx.mpc(0)] * zero_roots
    n = len(coeffs) - 1
    if n == 0:
        return roots
    if n == 1:
        return roots + [ctx.mpc(-coeffs[0] / coeffs[1])]

    dcoeffs = [k * c for k, c in enumerate(coeffs)][1:]

    z = _double_stage(ctx, coeffs)
    if z is None:
        logs = [float(ctx.log(abs(c))) if c != 0 else -math.inf for c in coeffs]
        z = [ctx.exp(ctx.mpf(lr)) * ctx.expj(ctx.mpf(th)) for lr, th in _newton_polygon_starts(logs)]

    step_tol = ctx.mpf(10) ** (3 - digits_of(ctx))
    prev_step = None
    for _ in range(max_iter):
        w_all = []
        for i in range(n):
            zi = z[i]
            pv = coeffs[-1]
            dv = dcoeffs[-1]
            for c in reversed(coeffs[:-1]):
                pv = pv * zi + c
            for c in reversed(dcoeffs[:-1]):
                dv = dv * zi + c
            if pv == 0:
                w_all.append(0)
                continue
            ratio = pv / dv
            s = 0
            for j in range(n):
                if j != i:
                    s += 1 / (zi - z[j])
            w_all.append(ratio / (1 - ratio * s))
        z = [zi - wi for zi, wi in zip(z, w_all)]
        step = max(abs(wi) / max(1, abs(zi)) for zi, wi in zip(z, w_all))
        if step <= step_tol:
            break
        # multiple roots converge only linearly; stop once residuals are fine
        # and the correction has stopped shrinking
        if prev_step is not None and step >= prev_step / 2:
            if all(_backward_error(coeffs, zi) <= tol for zi in z):
                break
        prev_step = step

    bad = [zi for zi in z if _backward_error(coeffs, zi) > tol]
    if bad:
        raise NonConvergence(f"{len(bad)} of {n} roots above tolerance; raise the working precision")
    return roots + z


def real_roots(roots, imag_tol) -> list:
    """Real parts of the roots whose imaginary part is within ``imag_tol``."""
    return [r.real for r in roots if abs(r.imag) <= imag_tol * max(1, abs(r.real))]


def min_modulus(roots, rel_tol=1e-12):
    """Root of smallest modulus.

    Roots whose moduli agree to ``rel_tol`` (conjugate pairs) are treated as
    tied, and the tie goes to the upper half plane.
    """
    smallest = min(abs(r) for r in roots)
    tied = [r for r in roots if abs(r) - smallest <= rel_tol * smallest]
    return max(tied, key=lambda r: (r.imag, -r.real))
