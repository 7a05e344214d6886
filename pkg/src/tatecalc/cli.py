"""Command-line interface: eval, verify, expand, report.

Exit codes: 0 success / suite pass, 1 identity failure, 2 usage or parse or
evaluation-type error.  All randomness is seeded, so identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import expansions, tate_h, tate_k
from .errors import TateCalcError
from .evaluator import EvalError, evaluate, infer_mode, render_value, value_json
from .parser import ParseError, parse
from .verify import SUITE_NAMES, run_suite

_PUNCTURES = {"0": expansions.Puncture.ZERO, "1": expansions.Puncture.ONE,
              "inf": expansions.Puncture.INFINITY}

REPORT_NAMES = ("q-integrality", "corollary-sign", "expansion-sign")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tatecalc",
        description="Exact computation and identity verification in the Tate rings of circle actions.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate an expression")
    ev.add_argument("expr", help="expression, e.g. 'boundary(cinv^2)' or 'geom(cinv)'")
    ev.add_argument("--ring", default="auto", choices=["auto", "tate_h", "tate_k", "series"],
                    help="ring context (default: inferred from the symbols used)")
    ev.add_argument("--order", type=int, default=8, help="truncation order for series results")
    ev.add_argument("--json", action="store_true", help="emit JSON")

    vf = sub.add_parser("verify", help="run a verification suite")
    vf.add_argument("suite", choices=list(SUITE_NAMES))
    vf.add_argument("--order", type=int, default=16)
    vf.add_argument("--seed", type=int, default=1)
    vf.add_argument("--json", action="store_true", help="emit the JSON report")
    vf.add_argument("--defect", type=int, default=None, help=argparse.SUPPRESS)

    ex = sub.add_parser("expand", help="expand a Tate K element at a puncture")
    ex.add_argument("expr", help="element of Z[q^±1, (1-q)^-1], e.g. '(1-q)^-1'")
    ex.add_argument("--at", required=True, choices=["0", "1", "inf"], dest="puncture")
    ex.add_argument("--order", type=int, default=8)
    ex.add_argument("--json", action="store_true")

    rp = sub.add_parser("report", help="print an investigative report")
    rp.add_argument("name", choices=list(REPORT_NAMES))
    rp.add_argument("--order", type=int, default=16)
    rp.add_argument("--json", action="store_true")

    return p


def _cmd_eval(args: argparse.Namespace) -> int:
    expr = parse(args.expr)
    value = evaluate(expr, args.ring, args.order)
    if args.json:
        mode = args.ring if args.ring != "auto" else infer_mode(expr)
        payload = {"expr": args.expr, "ring": mode, "order": args.order,
                   "value": value_json(value), "text": render_value(value)}
        print(json.dumps(payload, indent=2))
    else:
        print(render_value(value))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(args.suite, args.order, args.seed, defect=args.defect)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report)
    return 0 if report.passed else 1


def _cmd_expand(args: argparse.Namespace) -> int:
    expr = parse(args.expr)
    value = evaluate(expr, "tate_k", args.order)
    if not isinstance(value, tate_k.TateKElem):
        raise EvalError("expand needs an element of Z[q^±1, (1-q)^-1]")
    puncture = _PUNCTURES[args.puncture]
    series = expansions.expand(value, puncture, args.order)
    if args.json:
        payload = {
            "puncture": args.puncture,
            "variable": puncture.variable,
            "low": series.low,
            "order": series.order,
            "coeffs": [int(c) for c in series.coeffs],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(series)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    if args.name == "q-integrality":
        rep = tate_k.integrality_report(args.order)
        print(json.dumps(rep.to_json(), indent=2) if args.json else rep)
        return 0
    if args.name == "corollary-sign":
        res = tate_h.c_series_from_b(max(args.order, 4))
        payload = {
            "report": "corollary-sign",
            "order": max(args.order, 4),
            "matchingSign": res.matching_sign,
            "statement": f"c_hat = {res.matching_sign:+d} * b^-1 * B(-bT), B(D) = D/(e^D - 1)",
            "cHat": res.c_hat.to_json(),
        }
        if args.json:
            print(json.dumps(payload, indent=2))
        else:
            print(payload["statement"])
            print(f"c_hat = {res.c_hat}")
        return 0
    # expansion-sign
    qinv = tate_k.TateKElem(tate_k.LaurentPoly("q", {-1: 1}))
    series = expansions.expand_at_s(qinv, max(args.order, 4))
    payload = {
        "report": "expansion-sign",
        "order": max(args.order, 4),
        "qInvAtS": series.to_json(),
        "statement": (
            "q^-1 expands at the s-puncture as -(s + s^2 + ...); the sign is forced by "
            "(1 - s^-1) * (-sum_{k>=1} s^k) = 1, while the positive sum expands -q^-1"
        ),
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(payload["statement"])
        print(f"q^-1 |-> {series}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "expand":
            return _cmd_expand(args)
        if args.command == "report":
            return _cmd_report(args)
    except (ParseError, EvalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TateCalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
