"""Command-line front end: ``approx table|profile|virial``.

Every table command recomputes its rows end to end and compares them with
the reference values shipped in ``data/golden.json``. The exit status is 0
when everything converged and every deviation is within tolerance, 1 when
some deviation is not, and 2 on a numerical failure or bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import mpmath

from .approximants import (
    approximant_at,
    build_critical_isotherm,
    build_soft_sphere,
    effective_constant,
    effective_plateau,
    predict_blasius,
    predict_fp_z,
    predict_rho_c,
    predict_sakiadis_exp,
    predict_sakiadis_simple,
    singularity_radius,
)
from .approximants.builders import build_offset_reciprocal
from .errors import ApproximantError, PoleEncountered
from .numeric.context import get_context, scalar_str
from .problems import BoundaryLayerParams, VirialInput, boundary_layer_coeffs, fp_coeffs
from .reference import (
    ORACLE_DIGITS,
    boundary_layer_shoot,
    domb_sykes_fit,
    error_norm,
    fp_even_coeffs,
    fp_shoot,
    fp_shoot_converged,
)

PREDICTION_DIGITS = 60
PROFILE_DIGITS = 15
EXIT_OK, EXIT_DEVIATION, EXIT_FAILURE = 0, 1, 2

TABLE_COLUMNS = ["section", "N", "quantity", "value", "reference", "tolerance", "deviation", "ok"]


def load_golden() -> dict:
    text = resources.files("asymapprox.data").joinpath("golden.json").read_text()
    return json.loads(text)


@dataclass
class TableResult:
    rows: list = field(default_factory=list)
    ctx: object = None

    def add(self, section: str, N, quantity: str, value, ref: dict | None = None):
        row = {"section": section, "N": "" if N is None else str(N), "quantity": quantity}
        row["value"] = scalar_str(self.ctx, value)
        row.update(reference="", tolerance="", deviation="", ok="true")
        if ref is not None:
            dev = abs(self.ctx.mpf(value) - self.ctx.mpf(ref["value"]))
            ok = dev <= self.ctx.mpf(ref["tol"])
            row.update(
                reference=ref["value"],
                tolerance=ref["tol"],
                deviation=mpmath.nstr(dev, 3),
                ok="true" if ok else "false",
            )
        self.rows.append(row)

    @property
    def ok(self) -> bool:
        return all(r["ok"] == "true" for r in self.rows)


# -- argument helpers --------------------------------------------------------


def parse_range(text: str) -> list:
    """``A:B:STEP`` (inclusive of B) or ``A:B`` as a list of ints."""
    parts = [int(p) for p in text.split(":")]
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3 or parts[2] < 1 or parts[1] < parts[0]:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected A:B[:STEP] with A <= B")
    return list(range(parts[0], parts[1] + 1, parts[2]))


def requested_orders(args) -> list | None:
    if args.n is not None:
        return [args.n]
    return args.n_range


def _precision(args, default: int) -> int:
    return args.precision if args.precision is not None else default


def _select(rows: list, orders: list | None) -> list:
    return rows if orders is None else [r for r in rows if r["N"] in orders]


def _golden_row(rows: list, N: int) -> dict:
    for r in rows:
        if r["N"] == N:
            return r
    return {}


# -- tables ------------------------------------------------------------------


def table1(args, golden) -> TableResult:
    ctx = get_context(_precision(args, PREDICTION_DIGITS))
    out = TableResult(ctx=ctx)
    g = golden["table1"]
    orders = requested_orders(args)

    simple_orders = orders or [r["N"] for r in g["simple"]]
    simple = predict_sakiadis_simple(simple_orders, ctx=ctx)
    for N in simple_orders:
        ref = _golden_row(g["simple"], N)
        p = simple.at(N).params
        S, _ = singularity_radius(approximant_at(simple, N, ctx), ctx)
        out.add("simple", N, "kappa", p["kappa"], ref.get("kappa"))
        out.add("simple", N, "C", p["C"], ref.get("C"))
        out.add("simple", N, "S", S, ref.get("S"))

    exp_orders = orders or [r["N"] for r in g["exp"]]
    exp = predict_sakiadis_exp(list(range(5, max(exp_orders) + 1)), ctx=ctx)
    for N in exp_orders:
        ref = _golden_row(g["exp"], N)
        p = exp.at(N).params
        out.add("exp", N, "kappa", p["kappa"], ref.get("kappa"))
        out.add("exp", N, "C", p["C"], ref.get("C"))
        out.add("exp", N, "G", p["G"], ref.get("G"))

    if orders is None:
        num = g["numerical"]
        eta_inf = args.eta_inf or float(num["eta_inf"])
        octx = get_context(ORACLE_DIGITS)
        res, prof = boundary_layer_shoot("sakiadis", eta_inf, ctx=octx)
        out.add("numerical", None, "kappa", res.parameter, num["kappa"])
        out.add("numerical", None, "C", prof.f[-1], num["C"])
        # nearest singularity of the long reciprocal form at converged constants
        last = exp.at(max(exp_orders)).params
        a = build_offset_reciprocal("sakiadis", last["kappa"], last["C"], 200)
        S, root = singularity_radius(a, ctx)
        out.add("numerical", 200, "S", S, num["S"])
        out.add("numerical", 200, "eta_s_re", root.real, num["eta_s_re"])
        out.add("numerical", 200, "eta_s_im", root.imag, num["eta_s_im"])
    return out


def table2(args, golden) -> TableResult:
    ctx = get_context(_precision(args, PREDICTION_DIGITS))
    out = TableResult(ctx=ctx)
    orders = requested_orders(args)
    rows = _select(golden["table2"], orders)
    Ns = orders or [r["N"] for r in rows]
    _, prof = boundary_layer_shoot("sakiadis", args.eta_inf or 30, ctx=get_context(ORACLE_DIGITS))
    interval = (0, 20)
    simple_Ns = [N for N in Ns if N <= 11]
    simple = predict_sakiadis_simple(simple_Ns, ctx=ctx) if simple_Ns else None
    exp = predict_sakiadis_exp(list(range(5, max(Ns) + 1)), ctx=ctx)
    for N in Ns:
        ref = _golden_row(rows, N)
        if simple is not None and N in simple_Ns:
            a = approximant_at(simple, N, ctx)
            out.add("simple", N, "E", error_norm(a, prof, 0, interval), ref.get("E_simple"))
            out.add("simple", N, "E2", error_norm(a, prof, 2, interval), ref.get("E2_simple"))
        a = approximant_at(exp, N, ctx)
        out.add("exp", N, "E", error_norm(a, prof, 0, interval), ref.get("E_exp"))
        out.add("exp", N, "E2", error_norm(a, prof, 2, interval), ref.get("E2_exp"))
    return out


def table3(args, golden) -> TableResult:
    ctx = get_context(_precision(args, PREDICTION_DIGITS))
    out = TableResult(ctx=ctx)
    g = golden["table3"]
    orders = requested_orders(args)
    Ns = orders or [r["N"] for r in g["rows"]]
    octx = get_context(ORACLE_DIGITS)
    res, prof = boundary_layer_shoot("blasius", args.eta_inf or 30, ctx=octx)
    pred = predict_blasius(list(range(5, max(Ns) + 1)), ctx=ctx)
    for N in Ns:
        ref = _golden_row(g["rows"], N)
        p = pred.at(N).params
        a = approximant_at(pred, N, ctx)
        S, _ = singularity_radius(a, ctx)
        out.add("approximant", N, "kappa", p["kappa"], ref.get("kappa"))
        out.add("approximant", N, "B", p["B"], ref.get("B"))
        out.add("approximant", N, "S", S, ref.get("S"))
        out.add("approximant", N, "E", error_norm(a, prof, 0, (0, 8.8)), ref.get("E"))
        out.add("approximant", N, "E2", error_norm(a, prof, 2, (0, 8.8)), ref.get("E2"))
    if orders is None:
        out.add("numerical", None, "kappa", res.parameter, g["numerical"]["kappa_shoot"])
        N = max(Ns)
        _, q = effective_plateau("blasius", approximant_at(pred, N, ctx), 1, 10, 181)
        out.add("plateau", N, "Q", q, g["Q"])
    return out


def table4(args, golden) -> TableResult:
    ctx = get_context(_precision(args, PREDICTION_DIGITS))
    out = TableResult(ctx=ctx)
    g = golden["table4"]
    orders = requested_orders(args)
    if orders and any(N % 2 for N in orders):
        raise ValueError("orders must be even for this table")
    Ns = orders or [r["N"] for r in g["rows"]]
    eps = args.eps or 1e-8
    shot, steps = fp_shoot_converged(eps)
    z = shot.parameter
    _, prof = fp_shoot(eps, steps, r_max=10, guess=(z, z + 1e-9))
    pred = predict_fp_z(list(range(4, max(Ns) + 1, 2)), ctx=ctx)
    for N in Ns:
        ref = _golden_row(g["rows"], N)
        a = approximant_at(pred, N, ctx)
        S, _ = singularity_radius(a, ctx)
        out.add("approximant", N, "z", pred.at(N).params["z"], ref.get("z"))
        out.add("approximant", N, "S", S, ref.get("S"))
        out.add("approximant", N, "E", error_norm(a, prof, 0, (0, 10)), ref.get("E"))
    if orders is None:
        out.add("numerical", None, "z", z, g["numerical"]["z"])
        octx = get_context(ORACLE_DIGITS)
        b = fp_even_coeffs(z, 1000, octx)
        S, _, _ = domb_sykes_fit(_interleave(b, octx), fit_window=20, ctx=octx)
        out.add("numerical", 2000, "S", S, g["numerical"]["S"])
        N = max(Ns)
        _, d = effective_plateau("fp", approximant_at(pred, N, ctx), 1, 12, 221)
        out.add("plateau", N, "D", d, g["D"])
    return out


def _interleave(b: list, ctx) -> list:
    # even coefficients back into a full series with zero odd terms
    full = []
    for c in b:
        full += [c, ctx.mpf(0)]
    return full[:-1]


def table5(args, golden) -> TableResult:
    out = TableResult(ctx=mpmath.fp)
    rows = golden["table5"]
    if args.eps is not None:
        rows = [r for r in rows if float(r["eps"]) == args.eps] or [{"eps": repr(args.eps)}]
    for r in rows:
        shot, steps = fp_shoot_converged(float(r["eps"]))
        out.add("shooting", steps, f"z(eps={r['eps']})", shot.parameter, r.get("z"))
    return out


TABLES = {1: table1, 2: table2, 3: table3, 4: table4, 5: table5}


# -- output ------------------------------------------------------------------


def _csv_text(columns: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _render(args, columns: list, rows: list, extra: dict | None = None) -> str:
    if args.format == "json":
        doc = dict(extra or {})
        doc["rows"] = rows
        return json.dumps(doc, indent=2) + "\n"
    return _csv_text(columns, rows)


def cmd_table(args) -> int:
    golden = load_golden()
    result = TABLES[args.table_id](args, golden)
    _emit(args, _render(args, TABLE_COLUMNS, result.rows, {"table": args.table_id}))
    return EXIT_OK if result.ok else EXIT_DEVIATION


# -- profile -----------------------------------------------------------------


PROFILE_PROBLEMS = ("sakiadis", "sakiadis-exp", "blasius", "fp")


def _profile_approximant(problem: str, N: int, ctx):
    if problem == "sakiadis":
        pred = predict_sakiadis_simple(N, ctx=ctx, start=min(5, N))
        series = boundary_layer_coeffs(BoundaryLayerParams.sakiadis(pred.at(N).params["kappa"]), N)
    elif problem == "sakiadis-exp":
        pred = predict_sakiadis_exp(N, ctx=ctx, start=min(5, N))
        series = boundary_layer_coeffs(BoundaryLayerParams.sakiadis(pred.at(N).params["kappa"]), N)
    elif problem == "blasius":
        pred = predict_blasius(N, ctx=ctx, start=min(5, N))
        series = boundary_layer_coeffs(BoundaryLayerParams.blasius(pred.at(N).params["kappa"]), N)
    else:
        if N % 2 or N < 4:
            raise ValueError("the monopole approximant needs an even N >= 4")
        pred = predict_fp_z(N, ctx=ctx)
        series = fp_coeffs(pred.at(N).params["z"], N)
    return approximant_at(pred, N, ctx), series


def _oracle_profile(problem: str, args):
    if problem == "fp":
        eps = args.eps or 1e-8
        shot, steps = fp_shoot_converged(eps)
        z = shot.parameter
        return fp_shoot(eps, steps, r_max=args.stop, guess=(z, z + 1e-9))[1]
    bl = "blasius" if problem == "blasius" else "sakiadis"
    return boundary_layer_shoot(bl, args.eta_inf or 30)[1]


def cmd_profile(args) -> int:
    ctx = get_context(PREDICTION_DIGITS)
    out_digits = _precision(args, PROFILE_DIGITS)
    problem = args.problem
    a, series = _profile_approximant(problem, args.n, ctx)
    oracle = _oracle_profile(problem, args) if args.oracle else None
    eff_problem = {"sakiadis": "sakiadis", "sakiadis-exp": "sakiadis", "blasius": "blasius", "fp": "fp"}[problem]

    def fmt(v):
        return "" if v is None else ctx.nstr(ctx.mpf(v), out_digits)

    columns = ["x", "f_A", "f_A1", "f_A2", "partial_sum", "effective_constant"]
    if oracle is not None:
        columns += ["oracle_f", "oracle_f1", "oracle_f2"]
    columns.append("flag")
    rows = []
    count = max(args.count, 2)
    for k in range(count):
        x = ctx.mpf(args.start) + (ctx.mpf(args.stop) - args.start) * k / (count - 1)
        row = {"x": fmt(x), "flag": ""}
        try:
            j = a.evaluate(x)
            row.update(f_A=fmt(j.v), f_A1=fmt(j.d1), f_A2=fmt(j.d2))
            eff = effective_constant(eff_problem, a, x) if (x > 0 or eff_problem != "fp") else None
            row["effective_constant"] = fmt(eff)
        except PoleEncountered:
            row.update(f_A="", f_A1="", f_A2="", effective_constant="", flag="pole")
        acc = 0
        for c in reversed(series):
            acc = acc * x + c
        row["partial_sum"] = fmt(acc)
        if oracle is not None:
            try:
                f, f1, f2 = oracle.interpolate(x)
                row.update(oracle_f=fmt(f), oracle_f1=fmt(f1), oracle_f2=fmt(f2))
            except ApproximantError:
                row.update(oracle_f="", oracle_f1="", oracle_f2="")
                row["flag"] = row["flag"] or "outside-oracle"
        rows.append(row)
    _emit(args, _render(args, columns, rows, {"problem": problem, "N": args.n, "approximant": a.to_dict(ctx)}))
    return EXIT_OK


# -- virial ------------------------------------------------------------------


def _max_gap(a_series, b_series) -> object:
    return max(abs(x - y) for x, y in zip(a_series, b_series))


def cmd_virial(args) -> int:
    ctx = get_context(_precision(args, PREDICTION_DIGITS))
    if not args.input:
        raise ValueError("virial commands need --input")
    v = VirialInput.load(args.input, ctx)
    N = args.n if args.n is not None else len(v.reduced_coeffs)
    doc = {"command": args.subcommand, "N": N}
    branch_rows = None

    if args.subcommand == "soft-sphere":
        a = build_soft_sphere(v, N)
        taylor = a.taylor().coeffs
        doc["consistency"] = ctx.nstr(_max_gap(taylor, v.reduced_coeffs[:N]), 3)
        hi = args.stop if args.stop is not None else 1
        label, value_label = "rho_reduced", "Z_A"
    else:
        if args.subcommand == "predict-rhoc":
            pred = predict_rho_c(v, N, ctx=ctx)
            branch_rows = [
                {
                    "N": str(r.N),
                    "rho_c": scalar_str(ctx, r.params["rho_c"]),
                    "residual": ctx.nstr(r.residual, 3),
                    "candidates": ";".join(ctx.nstr(c, 15) for c in r.candidates),
                }
                for r in pred.records
            ]
            doc["branches"] = branch_rows
            doc["optimal_N"] = pred.optimal_truncation_N()
            v = VirialInput(
                reduced_coeffs=v.reduced_coeffs, name=v.name, h=v.h, kTc=v.kTc, Pc=v.Pc,
                rho_c=pred.at(N).params["rho_c"], delta=v.delta,
            )
        a = build_critical_isotherm(v, N)
        taylor = a.taylor().coeffs
        target = [0] + [v.kTc * b for b in v.reduced_coeffs[:N]]
        doc["consistency"] = ctx.nstr(_max_gap(taylor, target), 3)
        hi = args.stop if args.stop is not None else v.rho_c
        label, value_label = "rho", "P_A"

    doc["approximant"] = a.to_dict(ctx)
    count = max(args.count, 2)
    lo = ctx.mpf(args.start)
    iso = []
    for k in range(count):
        x = lo + (ctx.mpf(hi) - lo) * k / (count - 1)
        try:
            y = scalar_str(ctx, a.evaluate(x).v)
        except ApproximantError:
            y = ""
        iso.append({label: scalar_str(ctx, x), value_label: y})

    if args.out:
        out = Path(args.out)
        out.write_text(json.dumps(doc, indent=2) + "\n")
        out.with_suffix(".csv").write_text(_csv_text([label, value_label], iso))
        if branch_rows is not None:
            out.with_name(out.stem + "_branches.csv").write_text(
                _csv_text(["N", "rho_c", "residual", "candidates"], branch_rows)
            )
    elif args.format == "csv":
        sys.stdout.write(_csv_text([label, value_label], iso))
    else:
        doc["isotherm"] = iso
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


# -- entry point -------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=int, help="single order N")
    g.add_argument("--n-range", type=parse_range, metavar="A:B:STEP", help="orders A..B inclusive")
    p.add_argument("--precision", type=int, help="working precision in decimal digits (>= 15)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--eta-inf", type=float, help="truncated far boundary for boundary-layer oracles")
    p.add_argument("--eps", type=float, help="surrogate far boundary offset for the monopole oracle")
    p.add_argument("--input", help="virial input JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="approx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="recompute a reference table")
    t.add_argument("table_id", type=int, choices=sorted(TABLES))
    _common(t)
    t.set_defaults(func=cmd_table)

    p = sub.add_parser("profile", help="approximant profile on a grid")
    p.add_argument("problem", choices=PROFILE_PROBLEMS)
    _common(p)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=10.0)
    p.add_argument("--count", type=int, default=101)
    p.add_argument("--oracle", action="store_true", help="add shooting-oracle columns")
    p.set_defaults(func=cmd_profile)

    v = sub.add_parser("virial", help="virial-series approximants")
    v.add_argument("subcommand", choices=("soft-sphere", "critical", "predict-rhoc"))
    _common(v)
    v.add_argument("--start", type=float, default=0.0)
    v.add_argument("--stop", type=float)
    v.add_argument("--count", type=int, default=51)
    v.set_defaults(func=cmd_virial)
    return parser


def main(argv: list | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision is not None and args.precision < 15:
        parser.error("--precision must be at least 15")
    if args.command == "profile" and args.n is None:
        parser.error("profile needs --n")
    try:
        return args.func(args)
    except (ApproximantError, ValueError, KeyError, OSError) as exc:
        print(f"approx: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
