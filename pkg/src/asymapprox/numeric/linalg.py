"""Small linear solves: Vandermonde systems and straight-line least squares."""

from __future__ import annotations

from typing import Sequence

import mpmath

from ..errors import DegenerateNodes, InsufficientPoints


def vandermonde_solve(nodes: Sequence, rhs: Sequence) -> list:
    """Solve ``sum_k nodes[k]**i * a[k] = rhs[i]`` for i = 0..N-1.

    Row ``i`` of the matrix holds the ``i``-th powers of the nodes. Uses the
    Bjorck-Pereyra O(N^2) elimination, which is far more accurate than a
    general LU on these matrices. ``rhs`` entries may be jets.

    Raises
    ------
    DegenerateNodes
        If two nodes coincide.
    """
    x = list(nodes)
    b = list(rhs)
    if len(x) != len(b):
        raise ValueError("nodes and rhs differ in length")
    n = len(x) - 1
    for i in range(len(x)):
        for j in range(i):
            if x[i] == x[j]:
                raise DegenerateNodes(f"nodes {j} and {i} coincide")
    for k in range(n):
        for i in range(n, k, -1):
            b[i] = b[i] - x[k] * b[i - 1]
    for k in range(n - 1, -1, -1):
        for i in range(k + 1, n + 1):
            b[i] = b[i] / (x[i] - x[i - k - 1])
        for i in range(k, n):
            b[i] = b[i] - b[i + 1]
    return b


def vandermonde_apply(nodes: Sequence, a: Sequence) -> list:
    """Forward product matching :func:`vandermonde_solve`."""
    out = []
    for i in range(len(nodes)):
        acc = 0
        for xk, ak in zip(nodes, a):
            acc = acc + xk**i * ak
        out.append(acc)
    return out


def _context_of(value):
    return getattr(value, "context", mpmath.fp)


def linear_fit(xs: Sequence, ys: Sequence, ctx=None) -> tuple:
    """Least-squares line through ``(xs, ys)``.

    Returns
    -------
    (slope, intercept, rms)
        ``rms`` is the root-mean-square of the fit errors.
    """
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    if len(xs) < 2:
        raise InsufficientPoints("a line needs at least two points")
    if ctx is None:
        ctx = _context_of(xs[0])
    n = len(xs)
    mx = ctx.fsum(xs) / n
    my = ctx.fsum(ys) / n
    sxx = ctx.fsum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise InsufficientPoints("xs must not all coincide")
    sxy = ctx.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    rms = ctx.sqrt(ctx.fsum((y - slope * x - intercept) ** 2 for x, y in zip(xs, ys)) / n)
    return slope, intercept, rms
