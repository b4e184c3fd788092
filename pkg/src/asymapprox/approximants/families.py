"""The five approximant families.

Each family is an immutable record of its embedded constants and its
coefficient list ``A``. ``evaluate`` returns a :class:`Jet2` (value, first
and second derivative) and ``taylor`` re-expands the closed form about the
expansion point, which is how Taylor consistency with the source series is
checked.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import ClassVar

import mpmath

from ..errors import DomainMismatch, PoleEncountered
from ..numeric import jet
from ..numeric.context import scalar_str, to_scalar
from ..numeric.jet import Jet2
from ..series import TruncatedSeries, cauchy_product, pow_real, reciprocal


def context_of(value):
    """The mpmath context a scalar belongs to (``fp`` for plain floats)."""
    if isinstance(value, Jet2):
        value = value.v
    return getattr(value, "context", mpmath.fp)


def _inner(A, x):
    """``1 + sum A_n x**n`` by Horner on a jet (``A[0]`` is the constant)."""
    acc = Jet2.constant(A[-1])
    for c in reversed(A[:-1]):
        acc = acc * x + c
    return acc


def _var(x):
    return x if isinstance(x, Jet2) else Jet2.variable(x)


def _fail_if_pole(den: Jet2, x):
    # the inner polynomial is 1 at the origin; a sign change means a real pole
    if not den.v > 0:
        raise PoleEncountered(f"denominator vanished on [0, {x}]")


class _Serializable:
    family: ClassVar[str]

    def to_dict(self, ctx=None) -> dict:
        ctx = ctx or context_of(self.A[-1])
        params = {}
        for f in fields(self):
            if f.name == "A":
                continue
            val = getattr(self, f.name)
            params[f.name] = val if isinstance(val, (bool, int)) else scalar_str(ctx, val)
        return {
            "family": self.family,
            "params": params,
            "A": [scalar_str(ctx, a) for a in self.A],
            "N": self.N,
        }

    @classmethod
    def _from_params(cls, params: dict, A: tuple, ctx):
        kwargs = {}
        for f in fields(cls):
            if f.name == "A":
                continue
            raw = params[f.name]
            kwargs[f.name] = raw if isinstance(raw, (bool, int)) else to_scalar(ctx, raw)
        return cls(A=A, **kwargs)


@dataclass(frozen=True)
class OffsetReciprocalApproximant(_Serializable):
    """``C - C / (1 + sum A_n x**n)``, plus ``x`` when ``linear_term`` is set.

    With ``linear_term`` false this is the moving-plate form (offset is the
    far-field value C); with it true, the flat-plate form whose far field is
    ``x + B``.
    """

    offset_const: object
    linear_term: bool
    kappa: object
    A: tuple

    family: ClassVar[str] = "offset_reciprocal"

    @property
    def N(self) -> int:
        return len(self.A) - 1

    def evaluate(self, x) -> Jet2:
        t = _var(x)
        den = _inner(self.A, t)
        _fail_if_pole(den, x)
        out = self.offset_const - self.offset_const * den.reciprocal()
        return out + t if self.linear_term else out

    def taylor(self) -> TruncatedSeries:
        inv = reciprocal(TruncatedSeries(self.A))
        coeffs = [-self.offset_const * c for c in inv.coeffs]
        coeffs[0] = coeffs[0] + self.offset_const
        if self.linear_term and len(coeffs) > 1:
            coeffs[1] = coeffs[1] + 1
        return TruncatedSeries(coeffs)


@dataclass(frozen=True)
class ExpSeriesApproximant(_Serializable):
    """``C + sum_{n>=1} A_n exp(-n C x / 2)``; ``A[0]`` is unused (zero)."""

    C: object
    kappa: object
    A: tuple

    family: ClassVar[str] = "exp_series"

    @property
    def N(self) -> int:
        return len(self.A) - 1

    @property
    def G(self):
        return self.A[1]

    def evaluate(self, x) -> Jet2:
        ctx = context_of(self.C)
        t = _var(x)
        terms = []
        for n in range(1, len(self.A)):
            if self.A[n] == 0:
                continue
            terms.append(self.A[n] * jet.exp(ctx, t * (-n * self.C / 2)))
        # smallest terms first to limit cancellation at large x
        terms.sort(key=lambda j: abs(j.v))
        acc = Jet2.constant(self.C)
        total = Jet2.constant(0 * self.C)
        for term in terms:
            total = total + term
        return acc + total

    def taylor(self, order: int | None = None) -> TruncatedSeries:
        order = self.N if order is None else order
        coeffs = []
        fact = 1
        for k in range(order + 1):
            if k:
                fact = fact * k
            acc = 0
            for n in range(1, len(self.A)):
                acc = acc + self.A[n] * (-n * self.C / 2) ** k
            coeffs.append(acc / fact)
        coeffs[0] = coeffs[0] + self.C
        return TruncatedSeries(coeffs)


@dataclass(frozen=True)
class PadeReciprocalApproximant(_Serializable):
    """``z / (1 + sum A_n r**n)``."""

    z: object
    A: tuple

    family: ClassVar[str] = "pade_reciprocal"

    @property
    def N(self) -> int:
        return len(self.A) - 1

    def evaluate(self, x) -> Jet2:
        den = _inner(self.A, _var(x))
        _fail_if_pole(den, x)
        return self.z * den.reciprocal()

    def taylor(self) -> TruncatedSeries:
        return reciprocal(TruncatedSeries(self.A)).scale(self.z)


@dataclass(frozen=True)
class PowerLawApproximant(_Serializable):
    """``(1 + sum_{n=1}^{N-1} A_n x**n) ** ((h/3) / (N-1))``.

    Here ``A`` runs to index N-1, so the field ``N`` is stored explicitly.
    """

    h: object
    N: int
    A: tuple

    family: ClassVar[str] = "power_law"

    @property
    def exponent(self):
        return self.h / 3 / (self.N - 1)

    def evaluate(self, x) -> Jet2:
        ctx = context_of(self.h)
        inner = _inner(self.A, _var(x))
        if not inner.v > 0:
            raise PoleEncountered(f"inner polynomial vanished on [0, {x}]")
        return jet.power(ctx, inner, self.exponent)

    def taylor(self) -> TruncatedSeries:
        return pow_real(TruncatedSeries(self.A), self.exponent, context_of(self.h))


@dataclass(frozen=True)
class CriticalIsothermApproximant(_Serializable):
    """``Pc - sum_{n=0}^{N} A_n rho**n (1 - rho/rho_c)**delta``."""

    Pc: object
    rho_c: object
    delta: object
    kTc: object
    A: tuple

    family: ClassVar[str] = "critical_isotherm"

    @property
    def N(self) -> int:
        return len(self.A) - 1

    def evaluate(self, x) -> Jet2:
        ctx = context_of(self.Pc)
        t = _var(x)
        base = 1 - t / self.rho_c
        if base.v < 0:
            raise DomainMismatch("density beyond the critical density")
        if base.v == 0:
            return Jet2(self.Pc, 0 * self.Pc, 0 * self.Pc)
        return self.Pc - _inner(self.A, t) * jet.power(ctx, base, self.delta)

    def taylor(self) -> TruncatedSeries:
        ctx = context_of(self.Pc)
        order = self.N
        base = TruncatedSeries([1, -1 / self.rho_c] + [0] * (order - 1))
        prod = cauchy_product(TruncatedSeries(self.A), pow_real(base, self.delta, ctx))
        coeffs = [-c for c in prod.coeffs]
        coeffs[0] = coeffs[0] + self.Pc
        return TruncatedSeries(coeffs)


FAMILIES = {
    cls.family: cls
    for cls in (
        OffsetReciprocalApproximant,
        ExpSeriesApproximant,
        PadeReciprocalApproximant,
        PowerLawApproximant,
        CriticalIsothermApproximant,
    )
}


def approximant_from_dict(data: dict, ctx):
    """Inverse of ``to_dict``."""
    cls = FAMILIES[data["family"]]
    A = tuple(to_scalar(ctx, a) for a in data["A"])
    return cls._from_params(data["params"], A, ctx)


def eval_approximant(a, x) -> Jet2:
    """Value, first and second derivative of any approximant at ``x``."""
    return a.evaluate(x)
