"""Command line: ``newton-osc analyze | verify | sublevel | charts``."""

import argparse
import csv
import io
import json
import logging
import sys
import warnings
from fractions import Fraction

import numpy as np

from .decay import DecayPrediction
from .errors import FitToleranceError, InputError, NewtonOscError
from .polynomial import Polynomial, format_polynomial
from .quadrature import DEFAULT_QUAD_TOL, BumpSpec
from .report import SCHEMA, analysis_report, charts_report
from .sublevel import monte_carlo_measure, sublevel_expression, sublevel_measure
from .sweep import default_grid, sweep_and_fit

DEFAULT_FIT_TOL = 0.05


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _int_list(text, name):
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError("--%s expects comma-separated integers, got %r" % (name, text))
    return out


def _float_list(text, name):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError("--%s expects comma-separated numbers, got %r" % (name, text))


def _common(p):
    p.add_argument("--dim", type=int, required=True, help="number of variables")
    p.add_argument("--phase", required=True, help='polynomial, e.g. "x1^2*x2 + x2^5"')
    p.add_argument("--beta", help="weight exponents, comma separated (default zeros)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="write here instead of stdout")


def _numeric(p):
    p.add_argument("--radius", help="bump radius, one value or one per axis (default 0.5)")
    p.add_argument("--lmin", type=float)
    p.add_argument("--lmax", type=float)
    p.add_argument("--lpoints", type=int)
    p.add_argument("--quad-tol", type=float, default=DEFAULT_QUAD_TOL)
    p.add_argument("--fit-tol", type=float, default=DEFAULT_FIT_TOL)
    p.add_argument("--fit-log-power", type=int,
                   help="log power frozen in the exponent fit (default: the prediction's)")


def build_parser():
    parser = _Parser(prog="newton-osc", description="Newton polyhedra and oscillatory integral decay")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="exact polyhedral and toric report")
    _common(a)
    _numeric(a)
    a.add_argument("--verify", action="store_true", help="append the numeric sweep")
    a.add_argument("--format", choices=["json"], default="json")

    v = sub.add_parser("verify", help="lambda sweep and exponent fit")
    _common(v)
    _numeric(v)
    v.add_argument("--format", choices=["json", "csv"], default="json")
    v.add_argument("--csv", help="also write the sweep table here")

    s = sub.add_parser("sublevel", help="sublevel-set measure table")
    s.add_argument("--alpha", required=True)
    s.add_argument("--u", help="comma-separated u values (default: 1e-1 .. 1e-6)")
    s.add_argument("--samples", type=int, default=10 ** 6)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=["json", "csv"], default="csv")
    s.add_argument("--output")

    c = sub.add_parser("charts", help="toric data only")
    _common(c)
    c.add_argument("--format", choices=["json"], default="json")
    return parser


def _phase(args):
    if args.dim < 1:
        raise InputError("--dim must be positive")
    return Polynomial.parse(args.phase, args.dim)


def _beta(args):
    if args.beta is None:
        return (0,) * args.dim
    beta = _int_list(args.beta, "beta")
    if len(beta) != args.dim or any(b < 0 for b in beta):
        raise InputError("--beta needs %d nonnegative integers" % args.dim)
    return tuple(beta)


def _bump(args):
    if args.radius is None:
        return BumpSpec.uniform(args.dim)
    r = _float_list(args.radius, "radius")
    if len(r) == 1:
        r = r * args.dim
    if len(r) != args.dim:
        raise InputError("--radius needs 1 or %d values" % args.dim)
    return BumpSpec(tuple(r))


def _grid(args):
    lmin, lmax, n = default_grid(args.dim)
    return (args.lmin if args.lmin is not None else lmin,
            args.lmax if args.lmax is not None else lmax,
            args.lpoints if args.lpoints is not None else n)


def _echo(args, numeric=True):
    out = {"phase": args.phase, "dimension": args.dim,
           "beta": list(_beta(args)), "seed": args.seed}
    if numeric:
        lmin, lmax, n = _grid(args)
        out.update({"bump": _bump(args).to_dict(), "quad_tol": args.quad_tol, "fit_tol": args.fit_tol,
                    "lambda_min": lmin, "lambda_max": lmax, "lambda_points": n,
                    "fit_log_power": args.fit_log_power})
    return out


def _emit(text, path):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _run_sweep(args, p, report):
    beta = _beta(args)
    preds = report["predictions"]
    pred_dict = preds["weighted"] if any(beta) else preds["main"]
    predicted = DecayPrediction(Fraction(pred_dict["exponent"]), pred_dict["log_power"],
                                pred_dict["source"], pred_dict["integer_case"],
                                pred_dict["confidence"], pred_dict.get("remark_log_power"))
    lmin, lmax, n = _grid(args)
    res = sweep_and_fit(p, beta, _bump(args), lmin, lmax, n, predicted, args.quad_tol,
                        args.fit_log_power)
    target = float(predicted.exponent)
    gaps = {"theorem": abs(res.fitted_exponent - target)}
    if "fitted_exponent_remark" in res.extra_fits:
        gaps["remark"] = abs(res.extra_fits["fitted_exponent_remark"].exponent - target)
    summary = dict(res.to_dict())
    summary.update({
        "predicted_exponent": str(predicted.exponent),
        "predicted_log_power": predicted.log_power,
        "exponent_gap": gaps,
        "fit_tol": args.fit_tol,
        "within_tolerance": min(gaps.values()) <= args.fit_tol,
    })
    return res, summary


def run_analyze(args):
    p = _phase(args)
    report = analysis_report(p, _beta(args), args.seed, _echo(args))
    report["input"]["canonical_phase"] = format_polynomial(p)
    failure = None
    if args.verify:
        _, summary = _run_sweep(args, p, report)
        report["sweep"] = summary
        if not summary["within_tolerance"]:
            failure = summary
    _emit(_json(report), args.output)
    if failure is not None:
        raise FitToleranceError("fitted exponent differs from the prediction by %.4g"
                                % min(failure["exponent_gap"].values()))
    return 0


def run_verify(args):
    p = _phase(args)
    report = analysis_report(p, _beta(args), args.seed, _echo(args))
    res, summary = _run_sweep(args, p, report)
    table = _csv(res.csv_rows())
    if args.csv:
        _emit(table, args.csv)
    if args.format == "csv":
        _emit(table, args.output)
    else:
        _emit(_json({"schema": SCHEMA, "input": report["input"],
                     "predictions": report["predictions"], "sweep": summary}), args.output)
    if not summary["within_tolerance"]:
        raise FitToleranceError("fitted exponent differs from the prediction by %.4g"
                                % min(summary["exponent_gap"].values()))
    return 0


def run_sublevel(args):
    alpha = _int_list(args.alpha, "alpha")
    if args.u is None:
        us = [10.0 ** -k for k in range(1, 7)]
    else:
        us = _float_list(args.u, "u")
    if any(u <= 0 for u in us):
        raise InputError("--u values must be positive")
    if args.samples < 1:
        raise InputError("--samples must be positive")
    expr = sublevel_expression(alpha)
    rows = []
    for u in us:
        exact = sublevel_measure(alpha, u)
        mc = monte_carlo_measure(alpha, u, args.samples, args.seed)
        rows.append([repr(u), expr if u < 1 else "1", repr(exact.value), repr(mc.value), repr(mc.stderr)])
    if args.format == "csv":
        _emit(_csv([["u", "exact_value", "float_value", "monte_carlo_value", "mc_stderr"]] + rows),
              args.output)
    else:
        _emit(_json({"schema": SCHEMA,
                     "input": {"alpha": alpha, "samples": args.samples, "seed": args.seed},
                     "expression": expr,
                     "rows": [{"u": float(r[0]), "exact_value": r[1], "float_value": float(r[2]),
                               "monte_carlo_value": float(r[3]), "mc_stderr": float(r[4])}
                              for r in rows]}), args.output)
    return 0


def run_charts(args):
    p = _phase(args)
    _emit(_json(charts_report(p, _echo(args, numeric=False))), args.output)
    return 0


COMMANDS = {"analyze": run_analyze, "verify": run_verify, "sublevel": run_sublevel, "charts": run_charts}


def main(argv=None):
    # numba probes an old TBB at import of the parallel backend; it falls back cleanly
    warnings.filterwarnings("ignore", message="The TBB threading layer")
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args)
    except NewtonOscError as e:
        sys.stderr.write(json.dumps(e.to_dict()) + "\n")
        return e.exit_code
    except (OverflowError, FloatingPointError, np.linalg.LinAlgError) as e:
        sys.stderr.write(json.dumps({"error": "numeric_failure", "message": str(e)}) + "\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
