"""Coefficient construction for every family.

The ``*_coeffs`` helpers are generic in the scalar type so the prediction
code can push jets through them and get exact parameter derivatives.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import (
    MissingCoefficients,
    MissingCriticalConstants,
    ZeroAsymptoticConstant,
    ZeroCenterValue,
)
from ..numeric.linalg import vandermonde_solve
from ..numeric.polynomial import Polynomial
from ..problems import (
    BoundaryLayerParams,
    VirialInput,
    boundary_layer_coeffs,
    fp_coeffs,
    fp_series_symbolic,
)
from ..series import TruncatedSeries, pow_real
from .families import (
    CriticalIsothermApproximant,
    ExpSeriesApproximant,
    OffsetReciprocalApproximant,
    PadeReciprocalApproximant,
    PowerLawApproximant,
    context_of,
)

PROBLEMS = ("sakiadis", "blasius")


def _zero_top(A: list, k: int) -> tuple:
    z = 0 * A[0]
    return tuple(A[:-k] + [z] * k)


def wall_series_tilde(problem: str, kappa, N: int) -> list:
    """Wall coefficients of ``f`` (moving plate) or ``f - eta`` (flat plate)."""
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    if problem == "sakiadis":
        return boundary_layer_coeffs(BoundaryLayerParams.sakiadis(kappa), N)
    a = boundary_layer_coeffs(BoundaryLayerParams.blasius(kappa), N)
    a[1] = a[1] - 1
    return a


def offset_reciprocal_coeffs(a_tilde: list, K, N: int) -> list:
    """A_0..A_N with ``A_n = (1/K) sum_{j=1..n} a_j A_{n-j}``, A_0 = 1."""
    A = [1 + 0 * K]
    for n in range(1, N + 1):
        acc = a_tilde[1] * A[n - 1]
        for j in range(2, n + 1):
            acc = acc + a_tilde[j] * A[n - j]
        A.append(acc / K)
    return A


def scaled_offset_coeffs(a_tilde: list, K, N: int) -> tuple:
    """``K**n A_n`` for n = 0..N, which is polynomial in K.

    Also returns, for each n, the sum of term magnitudes; the ratio of the
    two measures how much cancellation a coefficient has suffered.
    """
    Kp = [1 + 0 * K]
    for _ in range(1, N):
        Kp.append(Kp[-1] * K)
    Ah = [1 + 0 * K]
    mag = [1]
    for n in range(1, N + 1):
        acc = 0
        m = 0
        for j in range(1, n + 1):
            term = a_tilde[j] * Kp[j - 1] * Ah[n - j]
            acc = acc + term
            m = m + abs(term.v if hasattr(term, "v") else term)
        Ah.append(acc)
        mag.append(m)
    return Ah, mag


def build_offset_reciprocal(problem: str, kappa, const, N: int, sacrifice: bool = False):
    """Reciprocal approximant for the moving-plate or flat-plate problem.

    Parameters
    ----------
    problem
        ``"sakiadis"`` (far field C) or ``"blasius"`` (far field eta + B).
    const
        C or B.
    sacrifice
        Store A_N and A_{N-1} as exact zeros (use with predicted parameters,
        where they vanish to solver tolerance anyway).
    """
    if const == 0:
        raise ZeroAsymptoticConstant("the far-field constant must be nonzero")
    a = wall_series_tilde(problem, kappa, N)
    A = offset_reciprocal_coeffs(a, const, N)
    if sacrifice:
        A = _zero_top(A, 2)
    return OffsetReciprocalApproximant(
        offset_const=const, linear_term=(problem == "blasius"), kappa=kappa, A=tuple(A)
    )


def exp_series_rhs(kappa, C, N: int, ctx) -> list:
    a = boundary_layer_coeffs(BoundaryLayerParams.sakiadis(kappa), max(N - 1, 2))
    rhs = [a[0] - C]
    scale = -2 / C
    p = 1
    fact = 1
    for n in range(1, N):
        p = p * scale
        fact *= n
        rhs.append(fact * p * a[n])
    return rhs


def exp_series_coeffs(kappa, C, N: int, ctx) -> list:
    """A_1..A_N (returned with a leading placeholder zero at index 0)."""
    nodes = [ctx.mpf(k) for k in range(1, N + 1)]
    A = vandermonde_solve(nodes, exp_series_rhs(kappa, C, N, ctx))
    return [0 * A[0]] + A


def build_exp_series(kappa, C, N: int, ctx=None, sacrifice: bool = False) -> ExpSeriesApproximant:
    """Exponential-series approximant ``C + sum A_n exp(-n C eta / 2)``."""
    if not C > 0:
        raise ValueError("C must be positive")
    ctx = ctx or context_of(C)
    A = exp_series_coeffs(kappa, C, N, ctx)
    if sacrifice and N >= 2:
        A = list(_zero_top(A, 2))
    return ExpSeriesApproximant(C=C, kappa=kappa, A=tuple(A))


def fp_approximant_coeffs(z, N: int) -> list:
    a = fp_coeffs(z, N)
    A = [1 + 0 * z]
    for n in range(1, N + 1):
        acc = a[1] * A[n - 1]
        for j in range(2, n + 1):
            acc = acc + a[j] * A[n - j]
        A.append(-acc / z)
    return A


def build_fp(z, N: int, sacrifice: bool = False) -> PadeReciprocalApproximant:
    """``z / (1 + sum A_n r**n)`` for the monopole problem (N even)."""
    if z == 0:
        raise ZeroCenterValue("z = 0 is the trivial solution")
    if N % 2:
        raise ValueError("N must be even")
    A = fp_approximant_coeffs(z, N)
    if sacrifice:
        A = list(_zero_top(A, 1))
    return PadeReciprocalApproximant(z=z, A=tuple(A))


def fp_z_polynomial(N: int, deflate: bool = True) -> Polynomial:
    """Exact polynomial in z whose roots make A_N vanish.

    With ``P_n = z**n A_n`` the recursion becomes
    ``P_n = -sum_j a_j z**(j-1) P_{n-j}``, so ``P_N`` is polynomial in z.
    The factors z (trivial solution) and z + 1 (the constant solution
    u = -1, for which every A_n is zero) are divided out exactly.
    """
    a = fp_series_symbolic(N)
    one = Polynomial([Fraction(1)])
    zpow = [one]
    for _ in range(N):
        zpow.append(zpow[-1].shift_degree(1))
    P = [one]
    for n in range(1, N + 1):
        acc = Polynomial([Fraction(0)])
        for j in range(1, n + 1):
            if a[j].coeffs == (0,):
                continue
            acc = acc + a[j] * zpow[j - 1] * P[n - j]
        P.append(-acc)
    p = P[N]
    if deflate:
        for root in (Fraction(0), Fraction(-1)):
            while p.degree >= 1 and p(root) == 0:
                p = _deflate(p, root)
    return p


def _deflate(p: Polynomial, root) -> Polynomial:
    # synthetic division by (x - root)
    c = list(p.coeffs)[::-1]
    out = [c[0]]
    for v in c[1:-1]:
        out.append(v + root * out[-1])
    return Polynomial(out[::-1])


def build_soft_sphere(v: VirialInput, N: int) -> PowerLawApproximant:
    """Power-law approximant for a soft-sphere fluid of hardness ``v.h``."""
    if v.h is None or not v.h > 0:
        raise MissingCoefficients("soft-sphere approximant needs h > 0")
    if N < 2:
        raise ValueError("N must be at least 2")
    if len(v.reduced_coeffs) < N:
        raise MissingCoefficients(f"need B_1..B_{N}, got {len(v.reduced_coeffs)}")
    if v.reduced_coeffs[0] != 1:
        raise ValueError("the first reduced coefficient must be 1")
    ctx = context_of(v.h)
    Z = TruncatedSeries(list(v.reduced_coeffs[:N]))
    A = pow_real(Z, (N - 1) / (v.h / 3), ctx)
    return PowerLawApproximant(h=v.h, N=N, A=A.coeffs)


def gamma_ratios(delta, n: int) -> list:
    """``Gamma(delta + j) / (Gamma(delta) j!)`` for j = 0..n as running products."""
    g = [1 + 0 * delta]
    for j in range(1, n + 1):
        g.append(g[-1] * (delta + j - 1) / j)
    return g


def _require_critical(v: VirialInput, N: int, need_rho: bool = True):
    names = ["Pc", "delta", "kTc"] + (["rho_c"] if need_rho else [])
    missing = [k for k in names if getattr(v, k) is None]
    if missing:
        raise MissingCriticalConstants("missing " + ", ".join(missing))
    if len(v.reduced_coeffs) < N:
        raise MissingCoefficients(f"need B_1..B_{N}, got {len(v.reduced_coeffs)}")


def build_critical_isotherm(v: VirialInput, N: int) -> CriticalIsothermApproximant:
    """Critical-isotherm approximant from B_1..B_N."""
    _require_critical(v, N)
    g = gamma_ratios(v.delta, N)
    B = (None,) + tuple(v.reduced_coeffs)
    A = [v.Pc]
    for n in range(1, N + 1):
        acc = 0
        rp = 1
        for j in range(n):
            acc = acc + B[n - j] * g[j] * rp
            rp = rp / v.rho_c
        A.append(v.Pc * g[n] / v.rho_c**n - v.kTc * acc)
    return CriticalIsothermApproximant(Pc=v.Pc, rho_c=v.rho_c, delta=v.delta, kTc=v.kTc, A=tuple(A))


def rho_c_polynomial(v: VirialInput, N: int) -> Polynomial:
    """Polynomial in rho_c whose positive roots make A_N vanish."""
    _require_critical(v, N, need_rho=False)
    g = gamma_ratios(v.delta, N)
    coeffs = [v.Pc * g[N]]
    for m in range(1, N + 1):
        coeffs.append(-v.kTc * v.reduced_coeffs[m - 1] * g[N - m])
    return Polynomial(coeffs)
