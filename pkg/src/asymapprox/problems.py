"""Series coefficients of the model problems and virial input records.

Boundary-layer problems (``2 f''' + f f'' = 0``)
    Sakiadis: ``f(0) = 0, f'(0) = 1, f'(inf) = 0``.
    Blasius:  ``f(0) = 0, f'(0) = 0, f'(inf) = 1``.
Monopole problem
    ``u'' + u'/r - u - u**2 = 0`` with ``u'(0) = 0, u(inf) = 0``.

All generators are generic in the parameter type, so passing a
:class:`~asymapprox.numeric.jet.Jet2` for kappa or z returns coefficients
together with their parameter derivatives.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .numeric.context import scalar_str, to_scalar
from .numeric.polynomial import Polynomial
from .series import TruncatedSeries


@dataclass(frozen=True)
class BoundaryLayerParams:
    """Wall data ``f(0) = a0``, ``f'(0) = a1``, ``f''(0) = kappa``."""

    kappa: object
    a0: object = 0
    a1: object = 1

    @classmethod
    def sakiadis(cls, kappa) -> "BoundaryLayerParams":
        return cls(kappa, 0, 1)

    @classmethod
    def blasius(cls, kappa) -> "BoundaryLayerParams":
        return cls(kappa, 0, 0)


@dataclass(frozen=True)
class FpParams:
    z: object


def boundary_layer_coeffs(p: BoundaryLayerParams, N: int) -> list:
    """Coefficients a_0..a_N of the wall expansion, any N >= 0."""
    a = [p.a0, p.a1, p.kappa / 2]
    for n in range(0, N - 2):
        acc = 0
        for j in range(n + 1):
            acc = acc + (j + 1) * (j + 2) * a[j + 2] * a[n - j]
        a.append(-acc / (2 * (n + 1) * (n + 2) * (n + 3)))
    return a[: N + 1]


def sakiadis_series(p: BoundaryLayerParams, N: int) -> TruncatedSeries:
    """Wall series for the moving-plate problem, order ``N >= 3``."""
    if N < 3:
        raise ValueError("sakiadis_series needs N >= 3")
    return TruncatedSeries(boundary_layer_coeffs(p, N))


def blasius_series(p: BoundaryLayerParams, N: int) -> TruncatedSeries:
    """Wall series for the flat-plate problem, order ``N >= 5``.

    Only indices 2, 5, 8, ... are nonzero.
    """
    if N < 5:
        raise ValueError("blasius_series needs N >= 5")
    return TruncatedSeries(boundary_layer_coeffs(p, N))


def fp_coeffs(z, N: int) -> list:
    """Coefficients a_0..a_N of the monopole series about r = 0, any N >= 0."""
    a = [z, 0 * z]
    for n in range(0, N - 1):
        acc = a[n]
        for k in range(n + 1):
            acc = acc + a[k] * a[n - k]
        a.append(acc / (n + 2) ** 2)
    return a[: N + 1]


def fp_series(p: FpParams, N: int) -> TruncatedSeries:
    """Monopole series, order ``N >= 2``; odd coefficients vanish."""
    if N < 2:
        raise ValueError("fp_series needs N >= 2")
    return TruncatedSeries(fp_coeffs(p.z, N))


def fp_series_symbolic(N: int, ctx=None) -> list:
    """Each a_n (n = 0..N) as a polynomial in z.

    Coefficients are exact Fractions; with ``ctx`` they are converted to that
    working precision after the exact recursion.
    """
    if N < 2:
        raise ValueError("fp_series_symbolic needs N >= 2")
    z = Polynomial([Fraction(0), Fraction(1)])
    polys = fp_coeffs(z, N)
    if ctx is None:
        return polys
    return [p.map(lambda c: to_scalar(ctx, c)) for p in polys]


def _num(ctx, value):
    return None if value is None else to_scalar(ctx, value)


@dataclass(frozen=True)
class VirialInput:
    """Virial data for one fluid.

    ``reduced_coeffs[k]`` is the coefficient of density**(k+1), so the first
    entry is B_1 (= 1 in the usual normalisation).
    """

    reduced_coeffs: tuple
    name: str = ""
    h: Optional[object] = None
    kTc: Optional[object] = None
    Pc: Optional[object] = None
    rho_c: Optional[object] = None
    delta: Optional[object] = None

    @classmethod
    def from_dict(cls, data: dict, ctx) -> "VirialInput":
        return cls(
            reduced_coeffs=tuple(to_scalar(ctx, c) for c in data["coeffs"]),
            name=data.get("name", ""),
            h=_num(ctx, data.get("h")),
            kTc=_num(ctx, data.get("kTc")),
            Pc=_num(ctx, data.get("Pc")),
            rho_c=_num(ctx, data.get("rho_c")),
            delta=_num(ctx, data.get("delta")),
        )

    @classmethod
    def load(cls, path, ctx) -> "VirialInput":
        return cls.from_dict(json.loads(Path(path).read_text()), ctx)

    def to_dict(self, ctx) -> dict:
        def s(v):
            return None if v is None else scalar_str(ctx, v)

        return {
            "name": self.name,
            "coeffs": [scalar_str(ctx, c) for c in self.reduced_coeffs],
            "h": s(self.h),
            "kTc": s(self.kTc),
            "Pc": s(self.Pc),
            "rho_c": s(self.rho_c),
            "delta": s(self.delta),
        }

    def dump(self, path, ctx) -> None:
        Path(path).write_text(json.dumps(self.to_dict(ctx), indent=2) + "\n")
