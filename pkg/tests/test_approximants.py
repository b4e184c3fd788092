from __future__ import annotations

from fractions import Fraction

import pytest

from asymapprox.approximants import (
    ParameterPrediction,
    PredictionRecord,
    approximant_at,
    approximant_from_dict,
    build_critical_isotherm,
    build_exp_series,
    build_fp,
    build_offset_reciprocal,
    build_soft_sphere,
    effective_constant,
    eval_approximant,
    fp_z_polynomial,
    predict_blasius,
    predict_fp_z,
    predict_rho_c,
    predict_sakiadis_exp,
    predict_sakiadis_simple,
    rho_c_polynomial,
    singularity_radius,
    track_branches,
)
from asymapprox.approximants.builders import exp_series_rhs, gamma_ratios
from asymapprox.errors import (
    DomainMismatch,
    MissingCoefficients,
    MissingCriticalConstants,
    PoleEncountered,
    ZeroAsymptoticConstant,
    ZeroCenterValue,
)
from asymapprox.problems import BoundaryLayerParams, VirialInput, boundary_layer_coeffs, fp_coeffs
from asymapprox.series import TruncatedSeries, cauchy_product, pow_real


def close(a, b, tol):
    return abs(a - b) <= tol


def synthetic_fluid(ctx, order=30, delta="4.789"):
    """``P = D - D (1 - rho)**delta * exp(rho/2)``, critical density 1."""
    delta = ctx.mpf(delta)
    ex = TruncatedSeries([ctx.mpf(1) / 2**n / ctx.factorial(n) for n in range(order + 1)])
    base = pow_real(TruncatedSeries([ctx.mpf(1), ctx.mpf(-1)] + [ctx.mpf(0)] * (order - 1)), delta, ctx)
    p = [-c for c in cauchy_product(ex, base).coeffs]
    D = 1 / p[1]
    return VirialInput(
        reduced_coeffs=tuple(c * D for c in p[1:]), name="synthetic", Pc=D, delta=delta, kTc=ctx.mpf(1)
    )


class TestOffsetReciprocal:
    def test_first_coefficients(self, ctx30):
        C, B = ctx30.mpf("1.6"), ctx30.mpf("-1.7")
        a = build_offset_reciprocal("sakiadis", ctx30.mpf("-0.44"), C, 6)
        assert close(a.A[1], 1 / C, 1e-28)
        b = build_offset_reciprocal("blasius", ctx30.mpf("0.33"), B, 6)
        assert close(b.A[1], -1 / B, 1e-28)

    @pytest.mark.parametrize("problem,k,c", [("sakiadis", "-0.4430", "1.6284"), ("blasius", "0.33", "-1.72")])
    def test_taylor_consistency(self, ctx60, problem, k, c):
        k, c, N = ctx60.mpf(k), ctx60.mpf(c), 11
        a = build_offset_reciprocal(problem, k, c, N)
        p = BoundaryLayerParams.sakiadis(k) if problem == "sakiadis" else BoundaryLayerParams.blasius(k)
        for x, y in zip(a.taylor().coeffs, boundary_layer_coeffs(p, N)):
            assert close(x, y, ctx60.mpf(10) ** -50)

    def test_wall_values(self, ctx30):
        k = ctx30.mpf("-0.44")
        j = eval_approximant(build_offset_reciprocal("sakiadis", k, ctx30.mpf("1.6"), 9), 0)
        assert close(j.v, 0, 1e-28) and close(j.d1, 1, 1e-28) and close(j.d2, k, 1e-28)
        k = ctx30.mpf("0.33")
        j = eval_approximant(build_offset_reciprocal("blasius", k, ctx30.mpf("-1.7"), 10), 0)
        assert close(j.v, 0, 1e-28) and close(j.d1, 0, 1e-28) and close(j.d2, k, 1e-28)

    def test_zero_constant(self, ctx30):
        with pytest.raises(ZeroAsymptoticConstant):
            build_offset_reciprocal("sakiadis", ctx30.mpf(-1), 0, 5)

    def test_pole_reported(self, ctx30):
        a = build_offset_reciprocal("sakiadis", ctx30.mpf(-1), ctx30.mpf(-1), 3)
        with pytest.raises(PoleEncountered):
            for x in range(0, 20):
                a.evaluate(ctx30.mpf(x) / 2)


class TestExpSeries:
    def test_single_term(self, ctx30):
        C = ctx30.mpf("1.5")
        a = build_exp_series(ctx30.mpf("-0.4"), C, 1, ctx30)
        assert close(a.A[1], -C, 1e-28)

    def test_rhs_rows(self, ctx30):
        k, C = ctx30.mpf("-0.44"), ctx30.mpf("1.6")
        a = boundary_layer_coeffs(BoundaryLayerParams.sakiadis(k), 6)
        rhs = exp_series_rhs(k, C, 7, ctx30)
        assert close(rhs[0], -C, 1e-28)
        for n in range(1, 7):
            assert close(rhs[n], ctx30.factorial(n) * (-2 / C) ** n * a[n], 1e-25)

    def test_taylor_consistency(self, ctx60):
        k, C, N = ctx60.mpf("-0.443748473247"), ctx60.mpf("1.61612459984"), 15
        a = build_exp_series(k, C, N, ctx60)
        ref = boundary_layer_coeffs(BoundaryLayerParams.sakiadis(k), N - 1)
        for x, y in zip(a.taylor(N - 1).coeffs, ref):
            assert close(x, y, ctx60.mpf(10) ** -45)

    def test_needs_positive_C(self, ctx30):
        with pytest.raises(ValueError):
            build_exp_series(ctx30.mpf(-1), ctx30.mpf(-1), 5, ctx30)


class TestFp:
    @pytest.mark.parametrize("z", ["-2.5", "-1.5", "0.7"])
    def test_second_coefficient(self, ctx30, z):
        z = ctx30.mpf(z)
        a = build_fp(z, 6)
        assert a.A[1] == 0
        assert close(a.A[2], -(1 + z) / 4, 1e-28)

    def test_constant_solution(self, ctx30):
        assert build_fp(ctx30.mpf(-1), 4).A[2] == 0

    def test_taylor_consistency(self, ctx60):
        z, N = ctx60.mpf("-2.3919564032"), 16
        a = build_fp(z, N)
        for x, y in zip(a.taylor().coeffs, fp_coeffs(z, N)):
            assert close(x, y, ctx60.mpf(10) ** -50)

    def test_bad_inputs(self, ctx30):
        with pytest.raises(ZeroCenterValue):
            build_fp(ctx30.mpf(0), 4)
        with pytest.raises(ValueError):
            build_fp(ctx30.mpf(-2), 5)

    def test_z_polynomial_is_deflated(self):
        p = fp_z_polynomial(4)
        assert p(Fraction(0)) != 0 and p(Fraction(-1)) != 0
        assert p(Fraction(-3, 2)) == 0


class TestVirial:
    def test_soft_sphere_two_terms(self, ctx30):
        h = ctx30.mpf(12)
        v = VirialInput(reduced_coeffs=(ctx30.mpf(1), ctx30.mpf("2.5")), h=h)
        a = build_soft_sphere(v, 2)
        assert close(a.A[1], ctx30.mpf("2.5") / (h / 3), 1e-27)

    def test_ideal_gas(self, ctx30):
        v = VirialInput(reduced_coeffs=(ctx30.mpf(1),) + (ctx30.mpf(0),) * 5, h=ctx30.mpf(9))
        a = build_soft_sphere(v, 6)
        assert all(c == 0 for c in a.A[1:])
        assert close(a.evaluate(ctx30.mpf("0.7")).v, 1, 1e-28)

    def test_soft_sphere_taylor(self, ctx30):
        B = (1, "0.5", "0.2", "0.1")
        v = VirialInput(reduced_coeffs=tuple(ctx30.mpf(b) for b in B), h=ctx30.mpf(4))
        a = build_soft_sphere(v, 4)
        for x, y in zip(a.taylor().coeffs, v.reduced_coeffs):
            assert close(x, y, ctx30.mpf(10) ** -18)

    def test_soft_sphere_missing(self, ctx30):
        with pytest.raises(MissingCoefficients):
            build_soft_sphere(VirialInput(reduced_coeffs=(ctx30.mpf(1),), h=ctx30.mpf(9)), 4)
        with pytest.raises(MissingCoefficients):
            build_soft_sphere(VirialInput(reduced_coeffs=(ctx30.mpf(1),) * 4), 4)

    def test_critical_first_coefficients(self, ctx30):
        v = VirialInput(
            reduced_coeffs=(ctx30.mpf(1), ctx30.mpf("0.5")),
            Pc=ctx30.mpf("0.3"), rho_c=ctx30.mpf("0.9"), delta=ctx30.mpf("4.789"), kTc=ctx30.mpf("1.2"),
        )
        a = build_critical_isotherm(v, 2)
        assert a.A[0] == v.Pc
        assert close(a.A[1], v.Pc * v.delta / v.rho_c - v.kTc, 1e-27)

    def test_critical_taylor(self, ctx30):
        v = VirialInput(
            reduced_coeffs=(ctx30.mpf(1), ctx30.mpf("0.5")),
            Pc=ctx30.mpf(1), rho_c=ctx30.mpf(1), delta=ctx30.mpf("4.789"), kTc=ctx30.mpf(1),
        )
        t = build_critical_isotherm(v, 2).taylor().coeffs
        assert close(t[0], 0, 1e-27) and close(t[1], 1, 1e-27) and close(t[2], ctx30.mpf("0.5"), 1e-27)

    def test_critical_domain(self, ctx30):
        v = synthetic_fluid(ctx30, 6)
        v = VirialInput(reduced_coeffs=v.reduced_coeffs, Pc=v.Pc, delta=v.delta, kTc=v.kTc, rho_c=ctx30.mpf(1))
        a = build_critical_isotherm(v, 4)
        assert a.evaluate(ctx30.mpf(1)).v == v.Pc
        with pytest.raises(DomainMismatch):
            a.evaluate(ctx30.mpf("1.1"))

    def test_missing_constants(self, ctx30):
        with pytest.raises(MissingCriticalConstants):
            rho_c_polynomial(VirialInput(reduced_coeffs=(ctx30.mpf(1),)), 1)

    def test_gamma_ratios(self, ctx30):
        d = ctx30.mpf("2.5")
        g = gamma_ratios(d, 5)
        for j, x in enumerate(g):
            assert close(x, ctx30.gamma(d + j) / (ctx30.gamma(d) * ctx30.factorial(j)), 1e-26)

    def test_rho_c_first_order(self, ctx30):
        v = VirialInput(reduced_coeffs=(ctx30.mpf(1),), Pc=ctx30.mpf("0.4"), delta=ctx30.mpf(4), kTc=ctx30.mpf(2))
        pred = predict_rho_c(v, 1, ctx=ctx30)
        # P_c * delta - kTc * B_1 * rho_c = 0 at N = 1
        assert close(pred.at(1).params["rho_c"], v.Pc * v.delta / v.kTc, 1e-25)

    def test_rho_c_synthetic_fluid(self, ctx60):
        pred = predict_rho_c(synthetic_fluid(ctx60), 14, ctx=ctx60)
        errs = [abs(r - 1) for r in pred.values("rho_c")]
        assert all(b < a for a, b in zip(errs, errs[1:12]))
        assert errs[-1] < 1e-12


class TestPredictions:
    def test_simple(self, ctx60):
        pred = predict_sakiadis_simple(11, ctx=ctx60)
        assert pred.orders == [5, 7, 9, 11]
        for N, k, C in [(5, -0.3879, 2.1607), (9, -0.4421, 1.6418), (11, -0.4430, 1.6284)]:
            p = pred.at(N).params
            assert round(float(p["kappa"]), 4) == k and round(float(p["C"]), 4) == C
            assert pred.at(N).residual < 1e-40

    def test_exp_low_orders(self, ctx60):
        pred = predict_sakiadis_exp(15, ctx=ctx60)
        p = pred.at(5).params
        assert close(p["kappa"], ctx60.mpf("-0.464241808775"), 1e-12)
        assert close(p["C"], ctx60.mpf("1.57791591603"), 1e-11)
        assert close(p["G"], ctx60.mpf("-1.9379232426"), 1e-10)
        p = pred.at(15).params
        assert close(p["kappa"], ctx60.mpf("-0.443748473247"), 1e-12)
        assert close(p["G"], ctx60.mpf("-2.1313373822"), 1e-10)

    def test_blasius_low_orders(self, ctx60):
        pred = predict_blasius(10, ctx=ctx60)
        p = pred.at(10).params
        assert close(p["kappa"], ctx60.mpf("0.30018461"), 1e-8)
        assert close(p["B"], ctx60.mpf("-2.00003122"), 1e-8)

    def test_fp(self, ctx60):
        pred = predict_fp_z(16, ctx=ctx60)
        assert pred.at(4).params["z"] == ctx60.mpf("-1.5")
        assert close(pred.at(8).params["z"], ctx60.mpf("-2.34792"), 1e-5)
        assert close(pred.at(16).params["z"], ctx60.mpf("-2.39196"), 1e-5)
        S, root = singularity_radius(approximant_at(pred, 16, ctx60))
        assert close(S, ctx60.mpf("2.61154"), 1e-5)
        assert root.imag > 0 and abs(root.real) < 1e-2 * S

    def test_fp_odd_order_rejected(self):
        with pytest.raises(ValueError):
            predict_fp_z([4, 5])

    def test_sacrificed_coefficients_are_zero(self, ctx60):
        a = approximant_at(predict_sakiadis_simple(7, ctx=ctx60), 7)
        assert a.A[-1] == 0 and a.A[-2] == 0


class TestBranchesAndTruncation:
    def test_fastest_branch_first(self):
        cands = [[1.0, 5.0], [1.5, 4.1], [1.75, 4.0]]
        best = track_branches([1, 2, 3], cands)[0]
        assert best == (5.0, 4.1, 4.0)

    def test_missing_orders_carry_forward(self):
        branches = track_branches([1, 2, 3], [[2.0], [], [2.1]])
        assert branches[0] == (2.0, 2.1, 2.1)

    @staticmethod
    def _pred(values):
        recs = tuple(PredictionRecord(N=5 + 2 * i, params={"p": v}, residual=0) for i, v in enumerate(values))
        return ParameterPrediction(problem="toy", names=("p",), records=recs)

    def test_optimal_truncation_at_stall(self):
        # differences 1, .1, .01, .02, .03: stall once D grows twice
        pred = self._pred([0, 1, 1.1, 1.11, 1.13, 1.16])
        assert pred.optimal_truncation_N() == 9
        assert pred.converged_values == {"p": 1.1}

    def test_no_stall_means_last_order(self):
        pred = self._pred([0, 1, 1.5, 1.75, 1.875])
        assert pred.optimal_truncation_N() == 13


class TestDiagnostics:
    def test_exp_series_G_eff(self, ctx60):
        pred = predict_sakiadis_exp(20, ctx=ctx60)
        a = approximant_at(pred, 20, ctx60)
        G = pred.at(20).params["G"]
        # next correction is A_2 exp(-C x / 2)
        lead = G + a.A[2] * ctx60.exp(-12 * a.C / 2)
        assert close(effective_constant("sakiadis", a, 12), lead, 1e-7)

    def test_fp_D_eff_needs_positive_r(self, ctx30):
        a = build_fp(ctx30.mpf("-2.39"), 8)
        with pytest.raises(ValueError):
            effective_constant("fp", a, 0)

    def test_blasius_singularity(self, ctx60):
        pred = predict_blasius(20, ctx=ctx60)
        S, root = singularity_radius(approximant_at(pred, 20, ctx60))
        assert close(S, ctx60.mpf("4.92273"), 1e-5)
        assert close(abs(root), S, 1e-40)


@pytest.mark.parametrize(
    "build",
    [
        lambda c: build_offset_reciprocal("sakiadis", c.mpf("-0.44"), c.mpf("1.6"), 7),
        lambda c: build_exp_series(c.mpf("-0.44"), c.mpf("1.6"), 6, c),
        lambda c: build_fp(c.mpf("-2.39"), 8),
        lambda c: build_soft_sphere(VirialInput(reduced_coeffs=(c.mpf(1), c.mpf(2), c.mpf(3)), h=c.mpf(12)), 3),
        lambda c: build_critical_isotherm(
            VirialInput(reduced_coeffs=(c.mpf(1), c.mpf(-1)), Pc=c.mpf("0.2"), rho_c=c.mpf(1), delta=c.mpf(4), kTc=c.mpf(1)), 2
        ),
    ],
)
def test_serialization_round_trip(ctx30, build):
    a = build(ctx30)
    b = approximant_from_dict(a.to_dict(ctx30), ctx30)
    assert b == a
