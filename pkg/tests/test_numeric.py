from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from asymapprox.errors import DegenerateNodes, InsufficientPoints, NonConvergence, SingularJacobian
from asymapprox.numeric import (
    Jet2,
    Polynomial,
    get_context,
    linear_fit,
    min_modulus,
    newton_2d,
    poly_roots,
    real_roots,
    scalar_str,
    to_scalar,
    vandermonde_apply,
    vandermonde_solve,
)
from asymapprox.numeric import jet


class TestContext:
    def test_fifteen_digits_is_double(self):
        assert get_context(15) is mpmath.fp

    def test_contexts_are_private_and_cached(self):
        c = get_context(40)
        assert c is get_context(40)
        assert c is not mpmath.mp
        assert c.dps == 40

    def test_below_minimum_rejected(self):
        with pytest.raises(ValueError):
            get_context(10)

    def test_scalar_round_trip(self, ctx60):
        x = ctx60.mpf(1) / 3
        assert to_scalar(ctx60, scalar_str(ctx60, x)) == x
        assert to_scalar(ctx60, Fraction(1, 3)) == x
        assert float(scalar_str(mpmath.fp, 0.1)) == 0.1


class TestJet:
    def test_product_rule(self):
        x = Jet2.variable(3.0)
        y = x * x * x
        assert (y.v, y.d1, y.d2) == (27.0, 27.0, 18.0)

    def test_quotient_and_power(self):
        x = Jet2.variable(2.0)
        r = 1 / x
        assert r.v == pytest.approx(0.5)
        assert r.d1 == pytest.approx(-0.25)
        assert r.d2 == pytest.approx(0.25)
        p = x**-2
        assert p.d2 == pytest.approx(6 / 16)

    def test_exp_log_sqrt(self, ctx30):
        x = Jet2.variable(ctx30.mpf(2))
        e = jet.exp(ctx30, 3 * x)
        assert abs(e.d2 - 9 * ctx30.exp(6)) < 1e-25
        lg = jet.log(ctx30, x)
        assert abs(lg.d2 + ctx30.mpf(1) / 4) < 1e-28
        s = jet.sqrt(ctx30, x)
        assert abs(s.d1 - 1 / (2 * ctx30.sqrt(2))) < 1e-28

    def test_real_power(self, ctx30):
        x = Jet2.variable(ctx30.mpf(4))
        p = jet.power(ctx30, x, ctx30.mpf("1.5"))
        assert abs(p.v - 8) < 1e-28
        assert abs(p.d1 - 3) < 1e-28
        assert abs(p.d2 - ctx30.mpf(3) / 8) < 1e-28


class TestPolyRoots:
    def test_difference_of_squares(self, ctx30):
        roots = poly_roots(Polynomial([-1, 0, 1]), 1e-25, ctx30)
        assert sorted(r.real for r in roots) == pytest.approx([-1, 1])

    def test_double_root(self, ctx30):
        roots = poly_roots(Polynomial([1, 2, 1]), 1e-12, ctx30)
        assert len(roots) == 2
        for r in roots:
            assert abs(r + 1) < 1e-10

    def test_widely_spread_moduli(self, ctx60):
        # geometric-mean starting circles collapse when one root is tiny
        want = [ctx60.mpf("1e-300"), ctx60.mpf("1e-200"), ctx60.mpf(3), ctx60.mpc(-2, 1)]
        roots = poly_roots(Polynomial.from_roots(want), ctx60.mpf(10) ** -40, ctx60)
        for w in want:
            assert min(abs(r - w) for r in roots) <= abs(w) * 1e-35

    def test_subnormal_root_not_absorbed_by_residual(self, ctx60):
        want = [ctx60.mpc(0, "-2.2250738585e-313")] + [ctx60.mpf(x) for x in ("2.89", "1.03", "-0.377", "2.03", "-1.88")]
        want.append(ctx60.mpc(0, "2.095"))
        roots = poly_roots(Polynomial.from_roots(want), ctx60.mpf(10) ** -40, ctx60)
        assert sorted(ctx60.nstr(abs(r), 8) for r in roots) == sorted(ctx60.nstr(abs(w), 8) for w in want)

    def test_wilkinson_twenty(self, ctx60):
        p = Polynomial.from_roots([ctx60.mpf(k) for k in range(1, 21)])
        roots = sorted(poly_roots(p, ctx60.mpf(10) ** -40, ctx60), key=lambda r: r.real)
        for k, r in enumerate(roots, start=1):
            assert abs(r - k) < 1e-30

    def test_zero_roots_factored(self, ctx30):
        roots = poly_roots(Polynomial([0, 0, -4, 1]), 1e-25, ctx30)
        assert sorted(abs(r) for r in roots) == pytest.approx([0, 0, 4])

    def test_constant_rejected(self, ctx30):
        with pytest.raises(ValueError):
            poly_roots(Polynomial([5]), 1e-20, ctx30)

    def test_real_filter_and_min_modulus(self):
        roots = [complex(3, 0), complex(1, 2), complex(1, -2), complex(-5, 1e-20)]
        assert real_roots(roots, 1e-12) == [3, -5]
        assert min_modulus(roots) == complex(1, 2)


class TestVandermonde:
    def test_one_by_one(self, ctx30):
        assert vandermonde_solve([ctx30.mpf(1)], [ctx30.mpf(-7)]) == [-7]

    def test_two_by_two_by_hand(self, ctx30):
        r1, r2 = ctx30.mpf(3), ctx30.mpf(11)
        a = vandermonde_solve([ctx30.mpf(1), ctx30.mpf(2)], [r1, r2])
        assert a[0] == 2 * r1 - r2
        assert a[1] == r2 - r1

    def test_recovers_forward_product(self, ctx60):
        nodes = [ctx60.mpf(k) for k in range(1, 11)]
        A = [ctx60.mpf(k * k - 3) / 7 for k in range(10)]
        back = vandermonde_solve(nodes, vandermonde_apply(nodes, A))
        for x, y in zip(A, back):
            assert abs(x - y) <= ctx60.mpf(10) ** -40 * max(1, abs(x))

    def test_repeated_nodes(self, ctx30):
        with pytest.raises(DegenerateNodes):
            vandermonde_solve([ctx30.mpf(1), ctx30.mpf(1)], [1, 2])


class TestNewton:
    def test_linear(self, ctx30):
        x, y, *_ = newton_2d(lambda x, y: (x - 1, y - 2), (0, 0), 1e-25, 20, ctx30)
        assert abs(x - 1) < 1e-25 and abs(y - 2) < 1e-25

    def test_circle_and_diagonal(self, ctx30):
        sol = newton_2d(lambda x, y: (x * x + y * y - 1, x - y), (1, 0), 1e-25, 40, ctx30)
        h = ctx30.sqrt(2) / 2
        assert abs(sol.x - h) < 1e-25 and abs(sol.y - h) < 1e-25

    def test_finite_difference_fallback(self, ctx30):
        def res(x, y):
            return ctx30.sin(x) - ctx30.mpf("0.5"), y**3 - 8

        x, y, *_ = newton_2d(res, (ctx30.mpf("0.5"), ctx30.mpf(1.5)), 1e-20, 40, ctx30)
        assert abs(x - ctx30.pi / 6) < 1e-12 and abs(y - 2) < 1e-12

    def test_singular_jacobian(self, ctx30):
        with pytest.raises(SingularJacobian):
            newton_2d(lambda x, y: (x + y - 1, 2 * x + 2 * y - 3), (0, 0), 1e-20, 10, ctx30)

    def test_no_root(self, ctx30):
        with pytest.raises((NonConvergence, SingularJacobian)):
            newton_2d(lambda x, y: (x * x + 1, y), (ctx30.mpf(1), 0), 1e-20, 15, ctx30)


class TestLinearFit:
    def test_exact_line(self):
        slope, icpt, rms = linear_fit([1.0, 2.0], [2.0, 4.0])
        assert slope == pytest.approx(2) and icpt == pytest.approx(0) and rms == pytest.approx(0)

    def test_constant(self):
        slope, icpt, _ = linear_fit([0.0, 1.0, 2.0], [1.0, 1.0, 1.0])
        assert slope == pytest.approx(0) and icpt == pytest.approx(1)

    def test_needs_two_points(self):
        with pytest.raises(InsufficientPoints):
            linear_fit([1.0], [1.0])
