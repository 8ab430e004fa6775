"""Command-line front end.

Exit codes: 0 success, 1 invalid parameters, 2 a verification or
census/formula comparison failed. Rationals are printed as "num/den".
"""
import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .arith import prime_power
from .census import LONG_MODEL_CEILING, census, dump_census, expect, save_census
from .classnum import GroupSpec
from .errors import EllstatError
from .ffield import CENSUS_CEILING
from .moments import (
    FormulaMismatch,
    census_moment_mt,
    census_moment_power,
    moment_mt,
    moment_power,
)
from .stats import ellpart_table, invariant_averages, sigmrq
from .traceformula import trace_gamma_nm
from .verify import MAX_REPORTED, SUITES, run_suites

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for failed checks
    def error(self, message):
        raise UsageError(message)


def encode(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return value


def render(records, fmt):
    records = [encode(r) for r in records]
    if fmt == "json":
        return json.dumps(records, indent=2, sort_keys=True)
    columns = list(records[0]) if records else []
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow({k: _cell(v) for k, v in r.items()})
        return buf.getvalue().rstrip("\n")
    rows = [columns] + [[_cell(r[c]) for c in columns] for r in records]
    widths = [max(len(row[i]) for row in rows) for i in range(len(columns))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows)


def _cell(v):
    return json.dumps(v, sort_keys=True) if isinstance(v, (list, dict)) else str(v)


# -- validation ----------------------------------------------------------------

def _field_size(q):
    pv = prime_power(q) if q >= 2 else None
    if pv is None:
        raise UsageError(f"q = {q} is not a prime power")
    return pv


def _census_size(q):
    p, _ = _field_size(q)
    if q > CENSUS_CEILING or (p <= 3 and q > LONG_MODEL_CEILING):
        raise UsageError(f"census for q = {q} is outside the supported range")


def _positive(name, value):
    if value is None or value < 1:
        raise UsageError(f"--{name} must be a positive integer")


# -- subcommands -----------------------------------------------------------------

def cmd_census(args):
    _census_size(args.q)
    table = census(args.q)
    if args.out:
        save_census(table, Path(args.out))
    mass = expect(table, lambda c: 1)
    records = [
        {
            "q": table.q,
            "rep": [list(v) for v in c.rep.coeff_vectors()],
            "aut": c.aut_count,
            "npoints": c.npoints,
            "t": c.t,
            "n1": c.n1,
            "n2": c.n2,
        }
        for c in table.classes
    ]
    if args.format == "json":
        return EXIT_OK, json.dumps(
            {"q": table.q, "classes": len(table.classes), "mass": encode(mass), "table": json.loads(dump_census(table))},
            indent=2,
            sort_keys=True,
        )
    return EXIT_OK, render(records, args.format)


def cmd_trace(args):
    _field_size(args.q)
    for name in ("N", "M", "d", "k"):
        _positive(name, getattr(args, name))
    if args.k < 2:
        raise UsageError("--k must be at least 2")
    res = trace_gamma_nm(args.q, args.N, args.M, args.d, args.k)
    record = {
        "q": args.q,
        "N": args.N,
        "M": args.M,
        "d": args.d,
        "k": args.k,
        "total": res.total,
        "identity": res.identity_term,
        "elliptic": res.elliptic_term,
        "hyperbolic": res.hyperbolic_term,
        "dual": res.dual_term,
    }
    return EXIT_OK, render([record], args.format)


def cmd_moment(args):
    _field_size(args.q)
    _positive("n1", args.n1)
    _positive("n2", args.n2)
    try:
        A = GroupSpec(args.n1, args.n2)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.method != "formula":
        _census_size(args.q)
    record = {"q": args.q, "n1": A.n1, "n2": A.n2, "method": args.method}
    if args.k is not None:
        if args.k < 2:
            raise UsageError("--k must be at least 2")
        record["k"] = args.k
        census_value = census_moment_mt(args.q, A, args.k) if args.method != "formula" else None
        formula_value = moment_mt(args.q, A, args.k) if args.method != "census" else None
    else:
        if args.power < 0:
            raise UsageError("--power must be non-negative")
        record["power"] = args.power
        census_value = census_moment_power(args.q, A, args.power) if args.method != "formula" else None
        formula_value = moment_power(args.q, A, args.power, "formula") if args.method != "census" else None
    if census_value is not None:
        record["census"] = census_value
    if formula_value is not None:
        record["formula"] = formula_value
    record["value"] = census_value if census_value is not None else formula_value
    if args.method == "both" and census_value != formula_value:
        raise FormulaMismatch(f"census {census_value} != formula {formula_value}")
    return EXIT_OK, render([record], args.format)


def cmd_verify(args):
    if args.qmax < 2:
        raise UsageError("--qmax must be at least 2")
    results = run_suites(args.suite, args.qmax)
    summary = [{"suite": r.name, "checked": r.checked, "failures": len(r.counterexamples)} for r in results]
    failures = [c for r in results for c in r.counterexamples]
    if failures:
        report = {"status": "fail", "suites": summary, "counterexamples": failures[:MAX_REPORTED]}
        return EXIT_FAILED, json.dumps(encode(report), indent=2, sort_keys=True)
    return EXIT_OK, render(summary, args.format)


def cmd_stats(args):
    _census_size(args.q)
    if args.what in ("n1", "n2"):
        rep = invariant_averages(args.q)[0 if args.what == "n1" else 1]
        return EXIT_OK, render([_report_record(rep)], args.format)
    if args.what in ("cyclic", "sigmrq"):
        m = 1 if args.what == "cyclic" else args.m
        k = 2 if args.what == "cyclic" else args.k
        _positive("m", m)
        if k < 2:
            raise UsageError("--k must be at least 2")
        return EXIT_OK, render([_report_record(sigmrq(args.q, m, k))], args.format)
    _positive("ell", args.ell)
    rows = [
        {"q": args.q, "ell": args.ell, "alpha": a, "beta": b, "probability": v}
        for (a, b), v in sorted(ellpart_table(args.q, args.ell).items())
    ]
    return EXIT_OK, render(rows, args.format)


def _report_record(rep):
    return {
        "q": rep.q,
        "statistic": rep.name,
        "census": rep.census_value,
        "main_term": rep.formula_main_term,
        "gap": rep.gap,
        "bound": rep.bound,
        "within_bound": rep.within_bound,
    }


def build_parser():
    parser = _Parser(
        prog="ellstat",
        description="Exact census and trace-formula statistics of elliptic curves over finite fields.",
    )
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("census", parents=[common], help="enumerate isomorphism classes over F_q")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("trace", parents=[common], help="Tr(<d> T_q | S_k(Gamma(N, M)))")
    for name in ("q", "N", "M", "d", "k"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("moment", parents=[common], help="E_q(U_{k-2}(t) Phi_A) or E_q(t^R Phi_A)")
    for name in ("q", "n1", "n2"):
        p.add_argument(f"--{name}", type=int, required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--k", type=int)
    which.add_argument("--power", type=int)
    p.add_argument("--method", choices=("census", "formula", "both"), default="both")
    p.set_defaults(func=cmd_moment)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--qmax", type=int, default=49)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", parents=[common], help="invariant-factor statistics")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--what", choices=("n1", "n2", "cyclic", "gekeler", "sigmrq"), required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--ell", type=int)
    p.set_defaults(func=cmd_stats)
    return parser


def run(argv=None):
    """Execute one command; returns (exit code, stdout text, stderr text)."""
    try:
        args = build_parser().parse_args(argv)
        code, text = args.func(args)
        return code, text, ""
    except UsageError as exc:
        return EXIT_INVALID, "", f"ellstat: {exc}"
    except FormulaMismatch as exc:
        report = {"status": "fail", "counterexamples": [{"detail": str(exc)}]}
        return EXIT_FAILED, json.dumps(report, indent=2, sort_keys=True), ""
    except EllstatError as exc:
        return EXIT_INVALID, "", f"ellstat: {type(exc).__name__}: {exc}"
    except SystemExit as exc:
        # --help
        return exc.code or EXIT_OK, "", ""


def main(argv=None):
    code, out, err = run(argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
