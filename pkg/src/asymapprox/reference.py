"""Independent numerical oracles.

* RK4 shooting for the boundary-layer problems on a truncated domain.
* RK4 shooting for the monopole problem after mapping ``r`` to
  ``alpha = 1 - exp(-r)`` so the far boundary sits at ``alpha = 1``.
* Domb-Sykes ratio extrapolation of a radius of convergence.
* Sup-norm errors of approximants against a sampled profile.
"""

from __future__ import annotations

import bisect
import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import mpmath
import numpy as np

from .errors import (
    ConvergedToTrivial,
    DomainMismatch,
    InsufficientCoefficients,
    NonConvergence,
)
from .numeric.context import get_context, scalar_str
from .numeric.linalg import linear_fit
from .problems import fp_coeffs

ORACLE_DIGITS = 30


@dataclass(frozen=True)
class ShootResult:
    parameter: object
    iterations: int
    terminal_mismatch: object


@dataclass(frozen=True)
class NumericProfile:
    """Samples ``(x, f, f', f'')`` on a strictly increasing grid."""

    xs: tuple
    f: tuple
    f1: tuple
    f2: tuple
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = len(self.xs)
        if not (len(self.f) == len(self.f1) == len(self.f2) == n):
            raise ValueError("profile columns differ in length")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise ValueError("profile grid must be strictly increasing")

    def component(self, order: int) -> tuple:
        return {0: self.f, 1: self.f1, 2: self.f2}[order]

    def interpolate(self, x) -> tuple:
        """``(f, f', f'')`` at ``x`` inside the grid.

        f and f' use cubic Hermite interpolation on their own derivative;
        f'' is linear.
        """
        if x < self.xs[0] or x > self.xs[-1]:
            raise DomainMismatch(f"{x} outside [{self.xs[0]}, {self.xs[-1]}]")
        k = max(bisect.bisect_right(self.xs, x) - 1, 0)
        k = min(k, len(self.xs) - 2)
        x0, x1 = self.xs[k], self.xs[k + 1]
        h = x1 - x0
        t = (x - x0) / h

        def hermite(y0, y1, d0, d1):
            t2, t3 = t * t, t * t * t
            return (
                (2 * t3 - 3 * t2 + 1) * y0
                + (t3 - 2 * t2 + t) * h * d0
                + (-2 * t3 + 3 * t2) * y1
                + (t3 - t2) * h * d1
            )

        f = hermite(self.f[k], self.f[k + 1], self.f1[k], self.f1[k + 1])
        f1 = hermite(self.f1[k], self.f1[k + 1], self.f2[k], self.f2[k + 1])
        f2 = self.f2[k] + t * (self.f2[k + 1] - self.f2[k])
        return f, f1, f2

    def to_csv(self, ctx=None) -> str:
        ctx = ctx or self.meta.get("ctx") or mpmath.fp
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "f", "f1", "f2"])
        for row in zip(self.xs, self.f, self.f1, self.f2):
            w.writerow([scalar_str(ctx, v) for v in row])
        return buf.getvalue()

    def write_csv(self, path, ctx=None) -> None:
        Path(path).write_text(self.to_csv(ctx))


def _secant(fun, z0, z1, tol, max_iter, bracket=None):
    """Secant iteration on ``fun``; bisection on ``bracket`` as fallback."""
    f0, f1 = fun(z0), fun(z1)
    it = 0
    ok = True
    while abs(z1 - z0) > tol * max(1, abs(z1)):
        it += 1
        if it > max_iter or f1 == f0 or not (mpmath.isfinite(f0) and mpmath.isfinite(f1)):
            ok = False
            break
        z0, z1 = z1, z1 - f1 * (z1 - z0) / (f1 - f0)
        f0, f1 = f1, fun(z1)
    if ok and mpmath.isfinite(f1) and f1 != 0:
        # a huge residual at z0 can freeze the step far from any root
        d = 100 * tol * max(1, abs(z1))
        ok = fun(z1 - d) * fun(z1 + d) <= 0
    if ok and mpmath.isfinite(f1):
        return z1, it, f1
    if bracket is None:
        raise NonConvergence("secant iteration failed")
    lo, hi = bracket
    flo, fhi = fun(lo), fun(hi)
    if not flo * fhi < 0:
        raise NonConvergence("secant failed and the bracket holds no sign change")
    while abs(hi - lo) > tol * max(1, abs(hi)):
        it += 1
        mid = (lo + hi) / 2
        fm = fun(mid)
        if fm * flo <= 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return (lo + hi) / 2, it, fun((lo + hi) / 2)


# -- boundary layers ----------------------------------------------------------


def _bl_integrate(ctx, kappa, a1, eta_inf, steps, sample_every=0):
    """RK4 for ``f''' = -f f'' / 2`` from the wall with ``f''(0) = kappa``."""
    h = ctx.mpf(eta_inf) / steps
    h2, h6 = h / 2, h / 6
    f, g, k = ctx.mpf(0), ctx.mpf(a1), ctx.mpf(kappa)
    samples = [(ctx.mpf(0), f, g, k)] if sample_every else None
    for i in range(1, steps + 1):
        k1f, k1g, k1k = g, k, -f * k / 2
        f2, g2, kk2 = f + h2 * k1f, g + h2 * k1g, k + h2 * k1k
        k2f, k2g, k2k = g2, kk2, -f2 * kk2 / 2
        f3, g3, kk3 = f + h2 * k2f, g + h2 * k2g, k + h2 * k2k
        k3f, k3g, k3k = g3, kk3, -f3 * kk3 / 2
        f4, g4, kk4 = f + h * k3f, g + h * k3g, k + h * k3k
        k4f, k4g, k4k = g4, kk4, -f4 * kk4 / 2
        f = f + h6 * (k1f + 2 * k2f + 2 * k3f + k4f)
        g = g + h6 * (k1g + 2 * k2g + 2 * k3g + k4g)
        k = k + h6 * (k1k + 2 * k2k + 2 * k3k + k4k)
        if sample_every and i % sample_every == 0:
            samples.append((h * i, f, g, k))
    return (f, g, k), samples


BL_TARGETS = {"sakiadis": (1, 0, (-0.45, -0.44)), "blasius": (0, 1, (0.33, 0.34))}


def boundary_layer_shoot(
    problem: str,
    eta_inf=30,
    tol=None,
    ctx=None,
    step="0.002",
    sample_step="0.01",
) -> tuple:
    """Shoot on the wall shear so that ``f'(eta_inf)`` hits its far value.

    Parameters
    ----------
    problem
        ``"sakiadis"`` (``f'(0) = 1``, target 0) or ``"blasius"``
        (``f'(0) = 0``, target 1).
    eta_inf
        Truncated far boundary, in [10, 40].
    step, sample_step
        RK4 step and spacing of the returned profile samples.

    Returns
    -------
    (ShootResult, NumericProfile)
    """
    if problem not in BL_TARGETS:
        raise ValueError(f"unknown problem {problem!r}")
    ctx = ctx or get_context(ORACLE_DIGITS)
    eta_inf = ctx.mpf(eta_inf)
    if not 10 <= eta_inf <= 40:
        raise ValueError("eta_inf must lie in [10, 40]")
    tol = ctx.mpf(tol) if tol is not None else ctx.mpf(10) ** (4 - ctx.dps)
    a1, target, (g0, g1) = BL_TARGETS[problem]
    steps = int(ctx.nint(eta_inf / ctx.mpf(step)))
    every = max(1, int(ctx.nint(ctx.mpf(sample_step) / (eta_inf / steps))))

    def mismatch(kappa):
        return _bl_integrate(ctx, kappa, a1, eta_inf, steps)[0][1] - target

    kappa, it, res = _secant(mismatch, ctx.mpf(g0), ctx.mpf(g1), tol, 60)
    _, samples = _bl_integrate(ctx, kappa, a1, eta_inf, steps, every)
    xs, f, f1, f2 = zip(*samples)
    profile = NumericProfile(
        xs, f, f1, f2,
        meta={"method": "rk4-shooting", "step": eta_inf / steps, "domain_truncation": eta_inf, "ctx": ctx},
    )
    return ShootResult(kappa, it, abs(res)), profile


# -- monopole -------------------------------------------------------------------

FP_LAUNCH_TERMS = 30


def _fp_tables(ctx, eps, M):
    """ODE coefficients ``u'' = c u' + w (u + u**2)`` at nodes and midpoints.

    Entry ``i`` of the node tables belongs to ``q_i = eps + (M - i) h``;
    entry ``i`` of the midpoint tables to ``q_i - h/2``. They depend only on
    the grid, so one set serves every shot of a secant iteration.
    """
    h = (1 - eps) / M
    if ctx is mpmath.fp:
        i = np.arange(M + 1, dtype=float)
        q = eps + (M - i) * h
        qm = q - h / 2
        out = []
        for qq in (q, qm):
            with np.errstate(divide="ignore", invalid="ignore"):
                c = (1 + 1 / np.log(qq)) / qq
            out += [c.tolist(), (1 / (qq * qq)).tolist()]
        return h, out
    out = [[], [], [], []]
    for i in range(M + 1):
        for k, qq in enumerate((eps + (M - i) * h, eps + (M - i) * h - h / 2)):
            if qq == 1:
                out[2 * k].append(ctx.mpf(0))
            else:
                out[2 * k].append((1 + 1 / ctx.log(qq)) / qq)
            out[2 * k + 1].append(1 / (qq * qq))
    return h, out


def _fp_march(ctx, z, eps, M, r_max=None, dr_out=None, tables=None):
    """u(1 - eps) for start value z; optional samples in r up to r_max.

    The ODE in ``alpha`` is written with ``q = 1 - alpha``:
    ``q**2 u'' = (q + q / ln q) u' + u + u**2``. Node ``i`` sits at
    ``q_i = eps + (M - i) h`` so q is never formed as ``1 - alpha``.
    """
    eps = ctx.mpf(eps)
    h, (cn, wn, cm, wm) = tables or _fp_tables(ctx, eps, M)

    # series launch one step off the singular wall
    a = fp_coeffs(ctx.mpf(z), FP_LAUNCH_TERMS)
    q0 = eps + (M - 1) * h
    r0 = -ctx.log(q0)
    u = ctx.mpf(0)
    ur = ctx.mpf(0)
    for n in range(len(a) - 1, -1, -1):
        u = u * r0 + a[n]
    for n in range(len(a) - 1, 0, -1):
        ur = ur * r0 + n * a[n]
    up = ur / q0

    samples = []
    last_r = None

    def record(q, u, up):
        # keeps the first point past r_max so the samples cover [0, r_max]
        nonlocal last_r
        if r_max is None or (last_r is not None and last_r > r_max):
            return
        r = -ctx.log(q)
        if last_r is not None and r - last_r < dr_out and r <= r_max:
            return
        last_r = r
        u_r = up * q
        u_rr = -u_r / r + u + u * u
        samples.append((r, u, u_r, u_rr))

    if r_max is not None:
        d1 = z + z * z
        samples.append((ctx.mpf(0), ctx.mpf(z), ctx.mpf(0), d1 / 2))
        last_r = ctx.mpf(0)
        record(q0, u, up)
    h2, h6 = h / 2, h / 6
    for i in range(1, M):
        c0, w0 = cn[i], wn[i]
        c1, w1 = cm[i], wm[i]
        c2, w2 = cn[i + 1], wn[i + 1]
        k1u, k1p = up, c0 * up + (u + u * u) * w0
        uu, pp = u + h2 * k1u, up + h2 * k1p
        k2u, k2p = pp, c1 * pp + (uu + uu * uu) * w1
        uu, pp = u + h2 * k2u, up + h2 * k2p
        k3u, k3p = pp, c1 * pp + (uu + uu * uu) * w1
        uu, pp = u + h * k3u, up + h * k3p
        k4u, k4p = pp, c2 * pp + (uu + uu * uu) * w2
        u = u + h6 * (k1u + 2 * k2u + 2 * k3u + k4u)
        up = up + h6 * (k1p + 2 * k2p + 2 * k3p + k4p)
        if r_max is not None:
            record(eps + (M - i - 1) * h, u, up)
    return u, samples


def fp_shoot(
    eps,
    steps: int,
    tol=1e-13,
    ctx=None,
    guess: tuple = (-2.5, -2.4),
    r_max=None,
    dr_out=0.02,
) -> tuple:
    """Shoot on ``z = u(0)`` so that ``u(1 - eps) = 0`` in the alpha variable.

    Parameters
    ----------
    eps
        Offset of the surrogate far boundary, ``0 < eps <= 0.1``.
    steps
        Number of RK4 steps M across ``[0, 1 - eps]`` (step ``(1-eps)/M``).
    ctx
        Working context; double precision by default (see README).
    r_max
        When given, also return a profile in ``r`` sampled up to ``r_max``.

    Returns
    -------
    ShootResult, or (ShootResult, NumericProfile) when ``r_max`` is set.

    Raises
    ------
    ConvergedToTrivial
        If the iteration lands on the ``u = 0`` solution.
    """
    ctx = ctx or mpmath.fp
    if not 0 < eps <= 0.1:
        raise ValueError("eps must lie in (0, 0.1]")
    if steps < 2:
        raise ValueError("need at least two steps")

    tables = _fp_tables(ctx, ctx.mpf(eps), steps)

    def terminal(z):
        return _fp_march(ctx, z, eps, steps, tables=tables)[0]

    z, it, res = _secant(
        terminal, ctx.mpf(guess[0]), ctx.mpf(guess[1]), tol, 60, bracket=(ctx.mpf(-3), ctx.mpf(-1))
    )
    if abs(z) < 0.1:
        raise ConvergedToTrivial("shooting converged to u = 0")
    result = ShootResult(z, it, abs(res))
    if r_max is None:
        return result
    _, samples = _fp_march(
        ctx, z, eps, steps, r_max=ctx.mpf(r_max), dr_out=ctx.mpf(dr_out), tables=tables
    )
    xs, f, f1, f2 = zip(*samples)
    profile = NumericProfile(
        xs, f, f1, f2, meta={"method": "rk4-shooting-alpha", "step": (1 - eps) / steps, "domain_truncation": eps, "ctx": ctx}
    )
    return result, profile


def fp_shoot_converged(eps, tol=3e-11, ctx=None, start_steps: int = 12500, max_steps: int = 3200000):
    """Repeat :func:`fp_shoot`, doubling the step count until z settles.

    Returns ``(ShootResult, steps)`` for the finest run once two successive
    runs agree to ``tol`` and the previous pair agreed to ``8 tol`` (coarse
    grids can agree by accident).
    """
    steps = start_steps
    prev = fp_shoot(eps, steps, ctx=ctx)
    last_diff = None
    while steps < max_steps:
        steps *= 2
        cur = fp_shoot(eps, steps, ctx=ctx, guess=(prev.parameter, prev.parameter + 1e-6))
        diff = abs(cur.parameter - prev.parameter)
        if diff <= tol and last_diff is not None and last_diff <= 8 * tol:
            return cur, steps
        prev, last_diff = cur, diff
    raise NonConvergence(f"z not settled to {tol} within {max_steps} steps")


# -- radius of convergence ---------------------------------------------------


def fp_even_coeffs(z, K: int, ctx) -> list:
    """b_k = a_{2k}, k = 0..K, of the monopole series (odd terms vanish)."""
    z = ctx.mpf(z)
    b = [z]
    for m in range(K):
        s = ctx.fdot(b, b[::-1])
        b.append((b[m] + s) / (2 * m + 2) ** 2)
    return b


def domb_sykes_fit(coeffs: Sequence, fit_window: int = 20, min_nonzero: int = 200, ctx=None) -> tuple:
    """Ratio-plot fit ``(intercept, slope, rms)`` of a series' radius.

    For a series with only even powers the ratio is
    ``sqrt|a_{2k} / a_{2k+2}|`` plotted against ``1/(k+1)``; otherwise
    ``|a_n / a_{n+1}|`` against ``1/(n+1)``. The line is fitted through the
    ``fit_window`` points nearest the origin.
    """
    if fit_window < 10:
        raise InsufficientCoefficients("fit_window must be at least 10")
    nonzero = sum(1 for c in coeffs if c != 0)
    if nonzero < max(min_nonzero, fit_window + 1):
        raise InsufficientCoefficients(f"only {nonzero} nonzero coefficients")
    ctx = ctx or getattr(coeffs[0], "context", mpmath.fp)
    even = all(c == 0 for c in coeffs[1::2])
    xs, ys = [], []
    if even:
        b = coeffs[::2]
        for k in range(len(b) - 1):
            xs.append(ctx.mpf(1) / (k + 1))
            ys.append(ctx.sqrt(abs(b[k] / b[k + 1])))
    else:
        for n in range(len(coeffs) - 1):
            xs.append(ctx.mpf(1) / (n + 1))
            ys.append(abs(coeffs[n] / coeffs[n + 1]))
    slope, intercept, rms = linear_fit(xs[-fit_window:], ys[-fit_window:], ctx)
    return intercept, slope, rms


def domb_sykes_intercept(coeffs: Sequence, fit_window: int = 20, min_nonzero: int = 200, ctx=None):
    """Intercept of the Domb-Sykes line, an estimate of the radius."""
    return domb_sykes_fit(coeffs, fit_window, min_nonzero, ctx)[0]


# -- error norms -------------------------------------------------------------------


def error_norm(a, ref: NumericProfile, derivative_order: int = 0, interval=None):
    """``max |a^(k)(x) - ref^(k)(x)|`` over the profile grid.

    ``interval`` restricts the grid to ``[lo, hi]``; the profile must cover
    it. ``derivative_order`` is 0 or 2 (1 also works).
    """
    if derivative_order not in (0, 1, 2):
        raise ValueError("derivative_order must be 0, 1 or 2")
    lo, hi = interval if interval is not None else (ref.xs[0], ref.xs[-1])
    if ref.xs[0] > lo or ref.xs[-1] < hi - 1e-9:
        raise DomainMismatch(f"profile covers [{ref.xs[0]}, {ref.xs[-1]}], need [{lo}, {hi}]")
    col = ref.component(derivative_order)
    worst = 0
    for x, y in zip(ref.xs, col):
        if x < lo or x > hi:
            continue
        j = a.evaluate(x)
        v = (j.v, j.d1, j.d2)[derivative_order]
        worst = max(worst, abs(v - y))
    return worst
