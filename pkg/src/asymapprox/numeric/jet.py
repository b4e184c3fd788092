"""Second-order forward-mode jets.

``Jet2(v, d1, d2)`` carries a value and its first two derivatives with
respect to one seed variable. Arithmetic applies the product, quotient and
chain rules exactly, so a closed-form expression evaluated on a seeded jet
returns f, f' and f'' at working precision.

Components may be any real type (float, mpmath mpf, Fraction); plain
numbers mix freely with jets and are treated as constants.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Jet2:
    v: object
    d1: object = 0
    d2: object = 0

    @classmethod
    def variable(cls, x) -> "Jet2":
        return cls(x, 1, 0)

    @classmethod
    def constant(cls, x) -> "Jet2":
        return cls(x, 0, 0)

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.v + other.v, self.d1 + other.d1, self.d2 + other.d2)
        return Jet2(self.v + other, self.d1, self.d2)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.v, -self.d1, -self.d2)

    def __sub__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.v - other.v, self.d1 - other.d1, self.d2 - other.d2)
        return Jet2(self.v - other, self.d1, self.d2)

    def __rsub__(self, other):
        return Jet2(other - self.v, -self.d1, -self.d2)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            return Jet2(
                self.v * other.v,
                self.d1 * other.v + self.v * other.d1,
                self.d2 * other.v + 2 * self.d1 * other.d1 + self.v * other.d2,
            )
        return Jet2(self.v * other, self.d1 * other, self.d2 * other)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet2":
        r = 1 / self.v
        r2 = r * r
        return Jet2(r, -self.d1 * r2, (2 * self.d1 * self.d1 * r - self.d2) * r2)

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other.reciprocal()
        return Jet2(self.v / other, self.d1 / other, self.d2 / other)

    def __rtruediv__(self, other):
        return other * self.reciprocal()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self ** (-n)).reciprocal()
        result = Jet2(1, 0, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def compose(self, f0, f1, f2) -> "Jet2":
        """Apply an outer function with value f0 and derivatives f1, f2 at ``self.v``."""
        return Jet2(f0, f1 * self.d1, f2 * self.d1 * self.d1 + f1 * self.d2)


def lift(x) -> Jet2:
    return x if isinstance(x, Jet2) else Jet2(x, 0, 0)


def value(x):
    return x.v if isinstance(x, Jet2) else x


def exp(ctx, x):
    if not isinstance(x, Jet2):
        return ctx.exp(x)
    e = ctx.exp(x.v)
    return x.compose(e, e, e)


def log(ctx, x):
    if not isinstance(x, Jet2):
        return ctx.log(x)
    r = 1 / x.v
    return x.compose(ctx.log(x.v), r, -r * r)


def sqrt(ctx, x):
    if not isinstance(x, Jet2):
        return ctx.sqrt(x)
    s = ctx.sqrt(x.v)
    return x.compose(s, 1 / (2 * s), -1 / (4 * s * x.v))


def power(ctx, x, s):
    """``x**s`` for a real (possibly non-integer) exponent ``s``; requires x > 0."""
    if not isinstance(x, Jet2):
        return ctx.power(x, s)
    p = ctx.power(x.v, s)
    return x.compose(p, s * p / x.v, s * (s - 1) * p / (x.v * x.v))
