from __future__ import annotations

from fractions import Fraction

import pytest

from asymapprox.errors import MismatchedExpansionPoint, NonpositiveLeadingCoefficient, ZeroLeadingCoefficient
from asymapprox.series import TruncatedSeries, cauchy_product, evaluate, pow_real, reciprocal

F = Fraction


def test_product_identity():
    b = TruncatedSeries([F(3), F(-1), F(7)])
    assert cauchy_product(TruncatedSeries([F(1), F(0), F(0)]), b).coeffs == b.coeffs


def test_product_binomial():
    one_plus_x = TruncatedSeries([1, 1, 0])
    assert cauchy_product(one_plus_x, one_plus_x).coeffs == (1, 2, 1)


def test_product_geometric():
    g = TruncatedSeries([1, 1, 1, 1])
    assert cauchy_product(g, g).coeffs == (1, 2, 3, 4)


def test_product_truncates_to_shorter():
    assert cauchy_product(TruncatedSeries([1, 1]), TruncatedSeries([1, 1, 1])).order == 1


def test_reciprocal_geometric():
    assert reciprocal(TruncatedSeries([1, -1, 0, 0, 0])).coeffs == (1, 1, 1, 1, 1)


def test_reciprocal_two_plus_x():
    r = reciprocal(TruncatedSeries([F(2), F(1), F(0), F(0)]))
    assert r.coeffs == (F(1, 2), F(-1, 4), F(1, 8), F(-1, 16))


def test_reciprocal_involution():
    a = TruncatedSeries([F(3), F(-2), F(5, 7), F(1, 9), F(4)])
    assert reciprocal(reciprocal(a)).coeffs == a.coeffs


def test_reciprocal_needs_constant_term():
    with pytest.raises(ZeroLeadingCoefficient):
        reciprocal(TruncatedSeries([0, 1]))


def test_pow_identity_exponent():
    a = TruncatedSeries([F(1), F(2, 3), F(-5), F(7)])
    assert pow_real(a, 1).coeffs == a.coeffs


def test_pow_square_root_binomial():
    r = pow_real(TruncatedSeries([F(1), F(1), F(0), F(0)]), F(1, 2))
    assert r.coeffs == (1, F(1, 2), F(-1, 8), F(1, 16))


def test_pow_minus_one_is_reciprocal():
    a = TruncatedSeries([F(1), F(-3), F(2, 5), F(8), F(-1, 3)])
    assert pow_real(a, -1).coeffs == reciprocal(a).coeffs


def test_pow_general_leading(ctx30):
    a = TruncatedSeries([ctx30.mpf(4), ctx30.mpf(4), ctx30.mpf(1)])
    r = pow_real(a, ctx30.mpf("0.5"), ctx30)
    # sqrt((2 + x)**2) = 2 + x
    assert abs(r[0] - 2) < 1e-28 and abs(r[1] - 1) < 1e-28 and abs(r[2]) < 1e-28


def test_pow_needs_positive_leading():
    with pytest.raises(NonpositiveLeadingCoefficient):
        pow_real(TruncatedSeries([-1, 1]), F(1, 2))


def test_evaluate_constant_and_monomial():
    j = evaluate(TruncatedSeries([3]), 11)
    assert (j.v, j.d1, j.d2) == (3, 0, 0)
    j = evaluate(TruncatedSeries([0, 0, 1]), 2)
    assert (j.v, j.d1, j.d2) == (4, 4, 2)


def test_evaluate_about_shifted_point():
    j = evaluate(TruncatedSeries([0, 0, 1], x0=1), 3)
    assert (j.v, j.d1, j.d2) == (4, 4, 2)


def test_mismatched_points():
    with pytest.raises(MismatchedExpansionPoint):
        TruncatedSeries([1, 2], x0=0) + TruncatedSeries([1, 2], x0=1)


def test_arithmetic_and_derivative():
    a = TruncatedSeries([1, 2, 3])
    b = TruncatedSeries([1, 1])
    assert (a + b).coeffs == (2, 3)
    assert (a - b).coeffs == (0, 1)
    assert (-a).coeffs == (-1, -2, -3)
    assert a.scale(2).coeffs == (2, 4, 6)
    assert a.derivative().coeffs == (2, 6)
    assert a.truncate(1).coeffs == (1, 2)
