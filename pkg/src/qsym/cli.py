"""Command-line front end: ``qsym <command> [flags]``.

Every command produces a report ``{tool_version, config, checks, ...}``.
With ``--json`` it is printed as sorted-key JSON, otherwise as a short
summary.  The exit status is 0 iff no hard check failed or errored.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .oracle import lower_support_ok, macdonald_P, macdonald_Q
from .raising import compare_operator_coeffs, ls_Q, raising_g_expansion, raising_Q
from .reports import CheckReport
from .scalar import format_scalar, generic_points, make_context, parse_rational
from .series import identity_n3, residual_report
from .suites import (full_suite, hall_littlewood_checks, schur_checks, tilde_checks,
                     truncation_checks)
from .symfunc import format_partition, pad, parse_partition

# descriptive anchors for each family of checks, keyed by check-id prefix
REFERENCES = {
    "oracle": "Gram-Schmidt characterization of P_lambda",
    "raise": "raising-operator series for Q_lambda",
    "ls": "Lassalle-Schlosser formula for Q_lambda",
    "compare-ls": "LS operator series vs. prod(1-R) sum c_n R^theta",
    "eigen": "D^1 eigenfunction equation",
    "identity-n3": "n = 3 hypergeometric identity",
    "n3-tilde": "n = 3 recast series vs. product of LS functions",
    "schur": "t = q Jacobi-Trudi specialization",
    "hall-littlewood": "q = 0 Hall-Littlewood specialization",
    "truncation": "t = q^k truncation",
    "det": "subset vs. determinant form of the LS factor",
    "two-route": "explicit c_2, c_3 and the n = 2 recurrence",
}

SUITES = ("schur", "hall-littlewood", "truncation", "full")


def reference_for(check_id: str) -> str:
    head = check_id.split("/", 1)[0]
    return REFERENCES.get(head, head)


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# argument handling

def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _partition(text):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", type=_partition, help="partition, e.g. 2,1")
    common.add_argument("--n", type=_positive, help="number of variables")
    common.add_argument("--q", type=_rational, help="rational q, e.g. 3/5")
    common.add_argument("--t", type=_rational, help="rational t, e.g. 2/7")
    common.add_argument("--N", type=_nonnegative, help="series truncation degree")
    common.add_argument("--bound", type=_nonnegative, help="theta entry bound")
    common.add_argument("--seed", type=_nonnegative, default=1, help="seed for free s values")
    common.add_argument("--trials", type=_positive, default=3, help="number of generic (q, t) points")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--strict", action="store_true", help="treat conjecture-tier checks as hard")
    common.add_argument("--param-order", choices=("qt", "tq"), default="qt",
                        help="argument order of D^1 (eigen only)")
    common.add_argument("--mode", choices=("ratio", "formal"), default="ratio",
                        help="index identification for compare-ls")

    parser = argparse.ArgumentParser(prog="qsym", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"qsym {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("oracle", "print Q_lambda from the Gram-Schmidt oracle"),
                       ("raise", "Q_lambda from the raising-operator series"),
                       ("ls", "Q_lambda from the Lassalle-Schlosser formula"),
                       ("eigen", "residual of the D^1 eigenfunction equation"),
                       ("compare-ls", "compare LS and raising operator coefficients"),
                       ("identity-n3", "n = 3 hypergeometric identity"),
                       ("n3-tilde", "n = 3 recast-series checks")):
        sub.add_parser(name, parents=[common], help=text)
    suite = sub.add_parser("suite", parents=[common], help="run a named batch of checks")
    suite.add_argument("suite", choices=SUITES)
    return parser


def _points(args):
    if (args.q is None) != (args.t is None):
        raise UsageError("give both --q and --t, or neither")
    if args.q is not None and args.t is not None:
        return [(args.q, args.t)]
    return generic_points(args.trials)


def _need_lambda(args):
    if args.lam is None:
        raise UsageError(f"{args.command} needs --lambda")
    n = args.n or max(len(args.lam), 1)
    try:
        return pad(args.lam, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def config_dict(args) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key == "lam":
            key, value = "lambda", None if value is None else format_partition(value)
        elif key in ("q", "t") and value is not None:
            value = format_scalar(value)
        out[key] = value
    return out


# ---------------------------------------------------------------------------
# commands

def _guarded(check_id, params, fn):
    """Run ``fn`` and turn an exception into an "error" report carrying the check id."""
    try:
        result = fn()
    except Exception as exc:  # noqa: BLE001 - surfaced in the report
        return [CheckReport(check_id, params, "error",
                            {"error": type(exc).__name__, "message": str(exc)})]
    return result if isinstance(result, list) else [result]


def _pt(q, t):
    return {"q": format_scalar(q), "t": format_scalar(t)}


def _expansion_dict(expansion):
    return [{"index": format_partition(a), "coeff": format_scalar(c)}
            for a, c in sorted(expansion.items(), reverse=True)]


def cmd_oracle(args):
    lam = _need_lambda(args)
    checks, results = [], []
    for q, t in _points(args):
        cid = f"oracle/{list(lam)}"

        def run(q=q, t=t):
            results.append({**_pt(q, t), "Q": macdonald_Q(tuple(lam), q, t).to_dict()})
            P = macdonald_P(tuple(lam), q, t)
            return CheckReport(cid + "/unitriangular", _pt(q, t),
                               "pass" if lower_support_ok(lam, P) else "fail", None)

        checks += _guarded(cid, _pt(q, t), run)
    return checks, {"results": results}


def _formula(args, name):
    lam = _need_lambda(args)
    checks, results = [], []
    for q, t in _points(args):
        cid = f"{name}/{list(lam)}"

        def run(q=q, t=t):
            ctx = make_context(len(lam), lam, q, t)
            Q = macdonald_Q(tuple(lam), q, t)
            F = raising_Q(lam, ctx) if name == "raise" else ls_Q(lam, ctx)
            entry = {**_pt(q, t), "Q": F.to_dict(), "matches_oracle": F == Q}
            if name == "raise":
                entry["g_expansion"] = _expansion_dict(raising_g_expansion(ctx))
            results.append(entry)
            return CheckReport(cid, _pt(q, t), "pass" if F == Q else "fail",
                               None if F == Q else {"oracle": Q.to_dict()})

        checks += _guarded(cid, _pt(q, t), run)
    return checks, {"results": results}


def cmd_raise(args):
    return _formula(args, "raise")


def cmd_ls(args):
    return _formula(args, "ls")


def cmd_eigen(args):
    n = args.n or 2
    N = 5 if args.N is None else args.N
    checks = []
    for q, t in _points(args):
        def run(q=q, t=t):
            ctx = make_context(n, None, q, t, seed=args.seed)
            return residual_report(ctx, N, args.param_order,
                                   conjectural=(n >= 3 and not args.strict))

        checks += _guarded(f"eigen/n={n}/N={N}/{args.param_order}", _pt(q, t), run)
    return checks, {}


def cmd_compare(args):
    n = args.n or (len(args.lam) if args.lam else 2)
    lam = pad(args.lam, n) if args.lam else pad(tuple(range(n, 0, -1)), n)
    bound = {2: 4, 3: 3}.get(n, 2) if args.bound is None else args.bound
    checks = []
    for q, t in _points(args):
        def run(q=q, t=t):
            ctx = make_context(n, lam, q, t)
            return compare_operator_coeffs(ctx, bound, args.mode,
                                           conjectural=(n >= 4 and not args.strict))

        checks += _guarded(f"compare-ls/n={n}/bound={bound}/{args.mode}", _pt(q, t), run)
    return checks, {}


def cmd_identity(args):
    N = 4 if args.N is None else args.N
    checks = []
    for q, t in _points(args):
        def run(q=q, t=t):
            return identity_n3(make_context(3, None, q, t, seed=args.seed), N,
                               conjectural=not args.strict)

        checks += _guarded(f"identity-n3/N={N}", _pt(q, t), run)
    return checks, {}


def cmd_tilde(args):
    bound = 3 if args.bound is None else args.bound
    checks = []
    for q, t in _points(args):
        checks += _guarded(f"n3-tilde/bound={bound}", _pt(q, t),
                           lambda q=q, t=t: tilde_checks([(q, t)], bound, args.seed))
    return checks, {}


def cmd_suite(args):
    points = generic_points(args.trials)
    qs = [args.q] if args.q is not None else [q for q, _ in points]
    ts = [args.t] if args.t is not None else [t for _, t in points]
    lams = [args.lam] if args.lam is not None else None
    if args.suite == "schur":
        checks = _guarded("schur", {}, lambda: schur_checks(qs, lams=lams))
    elif args.suite == "hall-littlewood":
        checks = _guarded("hall-littlewood", {}, lambda: hall_littlewood_checks(ts, lams=lams))
    elif args.suite == "truncation":
        checks = _guarded("truncation", {}, lambda: truncation_checks(qs, seed=args.seed))
    else:
        if args.q is not None and args.t is not None:
            points = [(args.q, args.t)]
        checks = _guarded("full", {}, lambda: full_suite(points, strict=args.strict))
    return checks, {}


COMMANDS = {
    "oracle": cmd_oracle, "raise": cmd_raise, "ls": cmd_ls, "eigen": cmd_eigen,
    "compare-ls": cmd_compare, "identity-n3": cmd_identity, "n3-tilde": cmd_tilde,
    "suite": cmd_suite,
}


# ---------------------------------------------------------------------------
# reporting

def build_report(args, checks, extra) -> dict:
    checks = sorted(checks, key=lambda c: c.check_id)  # stable: ties keep run order
    rows = [{"id": c.check_id, "paper_ref": reference_for(c.check_id), "status": c.status,
             "params": c.params, "witness": c.witness} for c in checks]
    return {"tool_version": __version__, "config": config_dict(args), "checks": rows, **extra}


def exit_status(report) -> int:
    return 0 if all(c["status"] in ("pass", "reported") for c in report["checks"]) else 1


def summary(report) -> str:
    lines = []
    for row in report["checks"]:
        where = " ".join(f"{k}={row['params'][k]}" for k in ("q", "t") if k in row["params"])
        lines.append(f"{row['status'].upper():8} {row['id']}" + (f"  [{where}]" if where else ""))
        if row["status"] != "pass" and row["witness"]:
            lines.append(f"         witness: {json.dumps(row['witness'], sort_keys=True)}")
    for entry in report.get("results", []):
        head = f"q={entry['q']} t={entry['t']}"
        if "matches_oracle" in entry:
            head += f" matches_oracle={entry['matches_oracle']}"
        lines.append(head)
        if "g_expansion" in entry:
            lines.append("  " + " + ".join(f"({g['coeff']}) g[{g['index']}]"
                                           for g in entry["g_expansion"]))
        lines.append("  " + " + ".join(f"({x['coeff']}) p[{x['partition']}]"
                                       for x in entry["Q"]["terms"]))
    counts = {}
    for row in report["checks"]:
        counts[row["status"]] = counts.get(row["status"], 0) + 1
    lines.append(", ".join(f"{k}: {v}" for k, v in sorted(counts.items())) or "no checks")
    return "\n".join(lines)


def run(args) -> tuple[int, dict]:
    checks, extra = COMMANDS[args.command](args)
    report = build_report(args, checks, extra)
    return exit_status(report), report


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, report = run(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(summary(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
