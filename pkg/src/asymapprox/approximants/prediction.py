"""Parameter prediction by coefficient sacrifice.

Two-parameter problems (wall shear plus a far-field constant) are solved
with damped Newton, continuing the root from one order to the next. One-
parameter problems reduce to polynomial equations whose real roots are
paired across orders into branches; the branch whose last successive
difference is smallest is selected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..errors import NonConvergence, NoPhysicalRoot, SingularJacobian
from ..numeric.context import DEFAULT_DIGITS, digits_of, get_context
from ..numeric.newton import newton_2d
from ..numeric.polynomial import poly_roots
from ..problems import VirialInput
from .builders import (
    build_exp_series,
    build_fp,
    build_offset_reciprocal,
    exp_series_coeffs,
    fp_z_polynomial,
    rho_c_polynomial,
    scaled_offset_coeffs,
    wall_series_tilde,
)


@dataclass(frozen=True)
class PredictionRecord:
    N: int
    params: dict
    residual: object
    branch_id: int = 0
    iterations: int = 0
    candidates: tuple = ()


@dataclass(frozen=True)
class ParameterPrediction:
    """Per-order predictions of one problem's unknown parameters.

    ``records`` holds the selected branch, one entry per computed order.
    ``branches`` (polynomial predictors only) holds every tracked branch as
    a tuple of values aligned with ``records``.
    """

    problem: str
    names: tuple
    records: tuple
    selected_branch: int = 0
    branches: tuple = field(default=(), compare=False)

    @property
    def orders(self) -> list:
        return [r.N for r in self.records]

    def at(self, N: int) -> PredictionRecord:
        for r in self.records:
            if r.N == N:
                return r
        raise KeyError(N)

    def values(self, name: str | None = None) -> list:
        name = name or self.names[0]
        return [r.params[name] for r in self.records]

    def successive_differences(self, name: str | None = None) -> list:
        """``(N, |p_N - p_prev|)`` for every record after the first."""
        v = self.values(name)
        return [(self.records[i].N, abs(v[i] - v[i - 1])) for i in range(1, len(v))]

    def optimal_truncation_N(self, name: str | None = None) -> int:
        """Last order before the successive difference stops decreasing.

        With the forward difference ``D_N = |p_{N+step} - p_N|``, the stall
        order is the first N at which D fails to decrease for two
        consecutive steps; the order just before it is returned. Without a
        stall this is the last order.
        """
        d = [abs(b) for _, b in self.successive_differences(name)]
        # d[i] is the forward difference starting at records[i]
        for i in range(1, len(d) - 1):
            if d[i] >= d[i - 1] and d[i + 1] >= d[i]:
                return self.records[i - 1].N
        return self.records[-1].N

    @property
    def converged_values(self) -> dict:
        return dict(self.at(self.optimal_truncation_N()).params)


def _order_grid(N, start: int, step: int) -> list:
    if isinstance(N, int):
        grid = list(range(start, N + 1, step))
        if not grid or grid[-1] != N:
            grid.append(N)
        return grid
    return sorted(set(N))


def _relative_residual(values, mags):
    # scale each equation by its own term magnitudes; the scale is frozen
    # (no derivative), which leaves the Newton direction unchanged
    out = []
    for v, m in zip(values, mags):
        mv = m.v if hasattr(m, "v") else m
        out.append(v / mv if mv else v)
    return tuple(out)


def offset_reciprocal_residual(problem: str, N: int) -> Callable:
    """Residual ``(A_N, A_{N-1})`` in scaled, cancellation-normalised form."""

    def residual(kappa, K):
        a = wall_series_tilde(problem, kappa, N)
        Ah, mag = scaled_offset_coeffs(a, K, N)
        return _relative_residual((Ah[N], Ah[N - 1]), (mag[N], mag[N - 1]))

    return residual


def exp_series_residual(N: int, ctx) -> Callable:
    def residual(kappa, C):
        A = exp_series_coeffs(kappa, C, N, ctx)
        scale = max(abs(a.v if hasattr(a, "v") else a) for a in A[1:])
        return _relative_residual((A[N], A[N - 1]), (scale, scale))

    return residual


def _solve(residual, guess, ctx, tol, max_iter=60):
    return newton_2d(residual, guess, tol, max_iter, ctx)


def _grid(lo, hi, n):
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def _multistart(residual_at, N, ctx, box, physical, tol, near):
    """Screen a grid of starts in double precision, polish survivors."""
    fast = get_context(15)
    found = []
    for x0 in _grid(box[0][0], box[0][1], box[2]):
        for y0 in _grid(box[1][0], box[1][1], box[2]):
            try:
                r = _solve(residual_at(N, fast), (x0, y0), fast, 1e-9, 40)
            except (NonConvergence, SingularJacobian, ZeroDivisionError, OverflowError):
                continue
            if physical(r.x, r.y) and all(
                abs(r.x - f[0]) + abs(r.y - f[1]) > 1e-6 for f in found
            ):
                found.append((r.x, r.y))
    polished = []
    for x0, y0 in found:
        try:
            r = _solve(residual_at(N, ctx), (x0, y0), ctx, tol)
        except (NonConvergence, SingularJacobian):
            continue
        if physical(r.x, r.y):
            polished.append(r)
    if not polished:
        return None
    return min(polished, key=lambda r: abs(r.x - near[0]) + abs(r.y - near[1]))


def _continuation(
    problem: str,
    names: tuple,
    grid: Sequence[int],
    seed: tuple,
    residual_at: Callable,
    physical: Callable,
    box: tuple,
    ctx,
    tol,
) -> ParameterPrediction:
    records = []
    guess = (ctx.mpf(seed[0]), ctx.mpf(seed[1]))
    for N in grid:
        res = None
        try:
            res = _solve(residual_at(N, ctx), guess, ctx, tol)
            if not physical(res.x, res.y):
                res = None
        except (NonConvergence, SingularJacobian):
            res = None
        if res is None:
            res = _multistart(residual_at, N, ctx, box, physical, tol, guess)
        if res is None:
            raise NoPhysicalRoot(f"{problem}: no physical root at N={N}")
        records.append(
            PredictionRecord(
                N=N,
                params={names[0]: res.x, names[1]: res.y},
                residual=res.residual,
                iterations=res.iterations,
            )
        )
        guess = (res.x, res.y)
    return ParameterPrediction(problem=problem, names=names, records=tuple(records))


def _default_tol(ctx):
    return ctx.mpf(10) ** (12 - digits_of(ctx))


def predict_sakiadis_simple(
    N, guess: tuple | None = None, ctx=None, start: int = 5, step: int = 2
) -> ParameterPrediction:
    """(kappa, C) of the reciprocal moving-plate approximant for each order.

    ``N`` is either the final order (sweeping ``start, start+step, ...``)
    or an explicit list of orders. The first order starts from ``guess``
    (default (-0.5, 2)); later orders continue from the previous root, with
    a grid search over kappa in [-1, 0], C in [1, 3] as fallback.
    """
    ctx = ctx or get_context(DEFAULT_DIGITS)
    return _continuation(
        "sakiadis_simple",
        ("kappa", "C"),
        _order_grid(N, start, step),
        guess or (-0.5, 2.0),
        lambda n, c: offset_reciprocal_residual("sakiadis", n),
        lambda k, C: k < 0 and C > 0,
        ((-1.0, 0.0), (1.0, 3.0), 9),
        ctx,
        _default_tol(ctx),
    )


def predict_sakiadis_exp(
    N, guess: tuple | None = None, ctx=None, start: int = 5, step: int = 1
) -> ParameterPrediction:
    """(kappa, C, G) of the exponential-series approximant for each order."""
    ctx = ctx or get_context(DEFAULT_DIGITS)
    pred = _continuation(
        "sakiadis_exp",
        ("kappa", "C"),
        _order_grid(N, start, step),
        guess or (-0.5, 2.0),
        lambda n, c: exp_series_residual(n, c),
        lambda k, C: k < 0 and C > 0,
        ((-1.0, 0.0), (1.0, 3.0), 9),
        ctx,
        _default_tol(ctx),
    )
    records = []
    for r in pred.records:
        A = exp_series_coeffs(r.params["kappa"], r.params["C"], r.N, ctx)
        records.append(
            PredictionRecord(
                N=r.N,
                params={**r.params, "G": A[1]},
                residual=r.residual,
                iterations=r.iterations,
            )
        )
    return ParameterPrediction(
        problem=pred.problem, names=("kappa", "C", "G"), records=tuple(records)
    )


def predict_blasius(
    N, guess: tuple | None = None, ctx=None, start: int = 5, step: int = 1
) -> ParameterPrediction:
    """(kappa, B) of the reciprocal flat-plate approximant for each order."""
    ctx = ctx or get_context(DEFAULT_DIGITS)
    return _continuation(
        "blasius",
        ("kappa", "B"),
        _order_grid(N, start, step),
        guess or (0.3, -1.7),
        lambda n, c: offset_reciprocal_residual("blasius", n),
        lambda k, B: k > 0 and B < 0,
        ((0.05, 0.6), (-7.0, -1.0), 9),
        ctx,
        _default_tol(ctx),
    )


def track_branches(orders: Sequence[int], candidates: Sequence[Sequence]) -> tuple:
    """Pair candidate values across orders into branches.

    Pairing runs backwards from the last order: every final candidate opens
    a branch, which then takes the nearest candidate at each earlier order.
    Branches are returned sorted by their last successive difference
    (fastest converging first). Orders without candidates give ``None``.
    """
    if not candidates or not candidates[-1]:
        raise NoPhysicalRoot("no admissible root at the final order")
    branches = []
    for c in candidates[-1]:
        path = [c]
        for cands in reversed(candidates[:-1]):
            path.append(min(cands, key=lambda v: abs(v - path[-1])) if cands else None)
            if path[-1] is None:
                path[-1] = path[-2]
        branches.append(tuple(reversed(path)))

    def score(b):
        return abs(b[-1] - b[-2]) if len(b) > 1 else 0

    return tuple(sorted(branches, key=score))


def _polynomial_prediction(problem, name, orders, poly_at, admissible, ctx):
    tol = ctx.mpf(10) ** (10 - digits_of(ctx))
    imag_tol = ctx.mpf(10) ** (20 - digits_of(ctx)) if digits_of(ctx) > 30 else 1e-8
    candidates = []
    residuals = []
    for n in orders:
        p = poly_at(n)
        roots = poly_roots(p, tol, ctx) if p.degree >= 1 else []
        real = [r.real for r in roots if abs(r.imag) <= imag_tol * max(1, abs(r))]
        real = sorted(x for x in real if admissible(x))
        candidates.append(real)
        residuals.append(p)
    branches = track_branches(orders, candidates)
    best = branches[0]
    records = []
    for n, value, p, cands in zip(orders, best, residuals, candidates):
        records.append(
            PredictionRecord(
                N=n,
                params={name: value},
                residual=abs(p(value)),
                branch_id=0,
                candidates=tuple(cands),
            )
        )
    return ParameterPrediction(
        problem=problem, names=(name,), records=tuple(records), branches=branches
    )


# spurious roots crowd towards the constant solution u = -1, which never
# decays; anything this close to it is not the localized solution
FP_CONSTANT_GAP = 0.1


def _fp_admissible(x) -> bool:
    return x < 0 and abs(x + 1) >= FP_CONSTANT_GAP


def predict_fp_z(N, ctx=None, start: int = 4) -> ParameterPrediction:
    """Negative real z roots of the sacrifice equation, tracked over even N."""
    ctx = ctx or get_context(DEFAULT_DIGITS)
    orders = _order_grid(N, start, 2)
    if any(n % 2 or n < 4 for n in orders):
        raise ValueError("orders must be even and at least 4")

    def poly_at(n):
        return fp_z_polynomial(n).map(lambda c: ctx.mpf(c.numerator) / c.denominator)

    return _polynomial_prediction("fp", "z", orders, poly_at, _fp_admissible, ctx)


def predict_rho_c(v: VirialInput, N, ctx=None, start: int = 1) -> ParameterPrediction:
    """Positive real critical-density roots, tracked over orders 1..N."""
    ctx = ctx or get_context(DEFAULT_DIGITS)
    orders = _order_grid(N, start, 1)
    return _polynomial_prediction(
        "critical_isotherm", "rho_c", orders, lambda n: rho_c_polynomial(v, n), lambda x: x > 0, ctx
    )


def approximant_at(pred: ParameterPrediction, N: int, ctx=None):
    """Approximant built from the predicted parameters at order ``N``."""
    p = pred.at(N).params
    if pred.problem == "sakiadis_simple":
        return build_offset_reciprocal("sakiadis", p["kappa"], p["C"], N, sacrifice=True)
    if pred.problem == "blasius":
        return build_offset_reciprocal("blasius", p["kappa"], p["B"], N, sacrifice=True)
    if pred.problem == "sakiadis_exp":
        return build_exp_series(p["kappa"], p["C"], N, ctx, sacrifice=True)
    if pred.problem == "fp":
        return build_fp(p["z"], N, sacrifice=True)
    raise ValueError(f"no approximant for {pred.problem}")
