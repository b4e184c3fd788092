"""Damped Newton iteration for two equations in two unknowns."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import NonConvergence, SingularJacobian
from .context import digits_of
from .jet import Jet2

MAX_HALVINGS = 20


@dataclass(frozen=True)
class NewtonResult:
    x: object
    y: object
    iterations: int
    residual: object

    def __iter__(self):
        yield self.x
        yield self.y


def _norm(ctx, r):
    return max(abs(r[0]), abs(r[1]))


def _jet_jacobian(residual, x, y):
    fx = residual(Jet2.variable(x), Jet2.constant(y))
    fy = residual(Jet2.constant(x), Jet2.variable(y))
    if not all(isinstance(v, Jet2) for v in (*fx, *fy)):
        raise TypeError("residual is not jet-clean")
    f = (fx[0].v, fx[1].v)
    return f, ((fx[0].d1, fy[0].d1), (fx[1].d1, fy[1].d1))


def _fd_jacobian(ctx, residual, x, y):
    h = ctx.mpf(10) ** (-(digits_of(ctx) // 2))
    hx = h * max(1, abs(x))
    hy = h * max(1, abs(y))
    xp, xm = residual(x + hx, y), residual(x - hx, y)
    yp, ym = residual(x, y + hy), residual(x, y - hy)
    jac = tuple(
        ((xp[i] - xm[i]) / (2 * hx), (yp[i] - ym[i]) / (2 * hy)) for i in range(2)
    )
    return residual(x, y), jac


def newton_2d(
    residual: Callable,
    guess: tuple,
    tol,
    max_iter: int,
    ctx,
    jacobian: str = "auto",
) -> NewtonResult:
    """Solve ``residual(x, y) = (0, 0)`` from ``guess``.

    Parameters
    ----------
    residual
        Maps two scalars to a pair. When it also accepts :class:`Jet2`
        arguments the Jacobian is exact; otherwise central differences with
        step ``10**(-digits/2)`` are used.
    tol
        Absolute bound on the max-norm of the residual.
    jacobian
        ``"auto"``, ``"jet"`` or ``"fd"``.

    The step is halved (up to 20 times) until the residual norm drops.

    Raises
    ------
    SingularJacobian
        When the 2x2 determinant vanishes relative to its products.
    NonConvergence
        After ``max_iter`` iterations.
    """
    x, y = ctx.mpf(guess[0]), ctx.mpf(guess[1])
    use_jet = jacobian in ("auto", "jet")
    eps = ctx.mpf(10) ** (-digits_of(ctx))
    f = residual(x, y)
    norm = _norm(ctx, f)
    for it in range(max_iter + 1):
        if norm <= tol:
            return NewtonResult(x, y, it, norm)
        if it == max_iter:
            break
        if use_jet:
            try:
                f, jac = _jet_jacobian(residual, x, y)
            except TypeError:
                if jacobian == "jet":
                    raise
                use_jet = False
        if not use_jet:
            f, jac = _fd_jacobian(ctx, residual, x, y)
        (a, b), (c, d) = jac
        det = a * d - b * c
        if det == 0 or abs(det) <= eps * (abs(a * d) + abs(b * c)):
            raise SingularJacobian(f"singular Jacobian at ({x}, {y})")
        dx = (d * f[0] - b * f[1]) / det
        dy = (a * f[1] - c * f[0]) / det
        t = ctx.mpf(1)
        for _ in range(MAX_HALVINGS + 1):
            xn, yn = x - t * dx, y - t * dy
            try:
                fn = residual(xn, yn)
                nn = _norm(ctx, fn)
            except (ZeroDivisionError, ValueError):
                nn = None
            if nn is not None and nn < norm:
                break
            t /= 2
        if nn is None:
            raise NonConvergence(f"residual undefined along the Newton step from ({x}, {y})")
        x, y, f, norm = xn, yn, fn, nn
    raise NonConvergence(f"Newton stalled after {max_iter} iterations, residual {norm}")
