from __future__ import annotations

import json
from fractions import Fraction

import pytest

from asymapprox.problems import (
    BoundaryLayerParams,
    FpParams,
    VirialInput,
    blasius_series,
    fp_coeffs,
    fp_series,
    fp_series_symbolic,
    sakiadis_series,
)
from asymapprox.series import TruncatedSeries, cauchy_product

F = Fraction
KAPPAS = [F(-4437, 10000), F(1, 3), F(-2), F(7, 5)]


@pytest.mark.parametrize("k", KAPPAS)
def test_sakiadis_low_coefficients(k):
    s = sakiadis_series(BoundaryLayerParams.sakiadis(k), 6)
    assert s[:3] == (0, 1, k / 2)
    assert s[3] == 0
    assert s[4] == -k / 48


@pytest.mark.parametrize("k", KAPPAS)
def test_blasius_low_coefficients(k):
    s = blasius_series(BoundaryLayerParams.blasius(k), 9)
    assert s[3] == s[4] == 0
    assert s[5] == -k**2 / 240
    assert s[8] == 11 * k**3 / 161280
    assert s[6] == s[7] == 0


def _ode_residual(coeffs):
    # 2 f''' + f f'' as a truncated series
    f = TruncatedSeries(coeffs)
    f2 = f.derivative().derivative()
    f3 = f2.derivative()
    prod = cauchy_product(f.truncate(f3.order), f2.truncate(f3.order))
    return [2 * a + b for a, b in zip(f3.coeffs, prod.coeffs)]


@pytest.mark.parametrize("problem", ["sakiadis", "blasius"])
@pytest.mark.parametrize("N", [6, 12, 20])
def test_boundary_layer_series_solves_ode(problem, N):
    p = getattr(BoundaryLayerParams, problem)(F(3, 10))
    coeffs = list((sakiadis_series if problem == "sakiadis" else blasius_series)(p, N).coeffs)
    assert all(r == 0 for r in _ode_residual(coeffs))


def test_minimum_orders():
    with pytest.raises(ValueError):
        sakiadis_series(BoundaryLayerParams.sakiadis(F(1)), 2)
    with pytest.raises(ValueError):
        blasius_series(BoundaryLayerParams.blasius(F(1)), 4)
    with pytest.raises(ValueError):
        fp_series(FpParams(F(1)), 1)


def test_fp_trivial_solution():
    assert all(c == 0 for c in fp_series(FpParams(F(0)), 12).coeffs)


@pytest.mark.parametrize("z", [F(-3, 2), F(-2391956, 1000000), F(5, 7)])
def test_fp_low_coefficients(z):
    a = fp_coeffs(z, 6)
    assert a[1] == a[3] == a[5] == 0
    assert a[2] == (z + z * z) / 4
    assert a[4] == (z + z * z) * (1 + 2 * z) / 64


def test_fp_series_solves_ode():
    # r u'' + u' - r (u + u**2) = 0 term by term
    z = F(-12, 5)
    N = 16
    u = TruncatedSeries(fp_coeffs(z, N))
    u1 = u.derivative()
    u2 = u1.derivative()
    sq = cauchy_product(u, u)
    for n in range(1, N - 1):
        lhs = (n + 1) * n * u[n + 1] + (n + 1) * u[n + 1] - (u[n - 1] + sq[n - 1])
        assert lhs == 0
    assert u2[0] == 2 * u[2]


def test_symbolic_matches_numeric():
    polys = fp_series_symbolic(10)
    assert polys[0].coeffs == (0, 1)
    assert polys[2].coeffs == (0, F(1, 4), F(1, 4))
    z = F(-7, 3)
    for p, c in zip(polys, fp_coeffs(z, 10)):
        assert p(z) == c


@pytest.mark.parametrize("k", range(1, 9))
def test_symbolic_degrees(k):
    assert fp_series_symbolic(2 * k)[2 * k].degree == k + 1


def test_virial_round_trip(tmp_path, ctx30):
    data = {"name": "toy", "coeffs": ["1", "0.5", "0.25"], "h": "12", "Pc": "0.1"}
    path = tmp_path / "v.json"
    path.write_text(json.dumps(data))
    v = VirialInput.load(path, ctx30)
    assert v.reduced_coeffs[1] == ctx30.mpf("0.5")
    assert v.h == 12 and v.delta is None
    v.dump(tmp_path / "w.json", ctx30)
    assert VirialInput.load(tmp_path / "w.json", ctx30) == v
