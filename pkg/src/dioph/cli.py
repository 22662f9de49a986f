"""Command line front end.

Exit codes: 0 success, 1 input error, 2 quartic constant not a square (a
shift point is needed), 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from dioph.corpus import report_json, report_table, run_corpus
from dioph.errors import DiophError, NotOnCurveError, NotSquareError, VerificationError
from dioph.integerize import IntegerSolution, parse_identity, scale_to_integers, verify
from dioph.pipeline import build_pipeline, load_problem
from dioph.ratcore import as_rational, format_rational
from dioph.reduction import RationalSolution, Term
from dioph.store import SolutionStore, default_store_path

EXIT_OK, EXIT_INPUT, EXIT_NEEDS_SHIFT, EXIT_UNVERIFIED = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; 2 is reserved for the non-square case
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _pipeline(args):
    data = _load_json(args.problem)
    try:
        problem = load_problem(data)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed problem in {args.problem}: {exc}") from None
    shift = args.shift if args.shift is not None else data.get("shift")
    return build_pipeline(problem, shift)


def _parse_point(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"--gen expects 'x,y', got {text!r}")
    try:
        return tuple(as_rational(p) for p in parts)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- commands ---------------------------------------------------------------------


def cmd_construct(args) -> int:
    pipeline = _pipeline(args)
    doc = pipeline.to_json()
    if args.json:
        print(_dump(doc))
    else:
        print(f"kind:  {pipeline.kind}")
        print(f"curve: {pipeline.curve}")
        if pipeline.long_curve is not None and pipeline.long_curve != pipeline.curve:
            print(f"long:  {pipeline.long_curve}")
        if pipeline.q is not None:
            print(f"q:     {format_rational(pipeline.q)}")
        print(_dump(doc["curve"]))
    return EXIT_OK


def cmd_solve(args) -> int:
    pipeline = _pipeline(args)
    if args.multiples < 0:
        raise InputError("--multiples must be >= 0")
    x, y = _parse_point(args.gen)
    if not pipeline.curve.contains((x, y)):
        raise NotOnCurveError(
            f"generator ({format_rational(x)}, {format_rational(y)}) is not on {pipeline.curve}"
        )
    base = pipeline.curve.point(x, y)
    out = []
    for m, pt in pipeline.curve.multiples(base, args.multiples):
        reason = pipeline.exceptional(pt)
        if reason:
            print(f"skip m={m}: {reason}", file=sys.stderr)
            continue
        sol = scale_to_integers(pipeline.solution(pt, f"{pipeline.label}:gen*{m}"))
        if not verify(sol):
            print(f"m={m}: integer identity failed to verify", file=sys.stderr)
            return EXIT_UNVERIFIED
        out.append(sol)
        print(_dump(sol.to_json(verified=True)))
    if args.store is not None:
        store = SolutionStore(args.store or default_store_path())
        added = store.add(out)
        print(f"stored {added} new of {len(out)} to {store.path}", file=sys.stderr)
    return EXIT_OK


def cmd_search(args) -> int:
    if args.num_bound < 0 or args.den_bound < 1:
        raise InputError("need --num-bound >= 0 and --den-bound >= 1")
    pipeline = _pipeline(args)
    curve = pipeline.curve
    found = curve.naive_search(args.num_bound, args.den_bound)
    for pt in found:
        # both sides of the curve equation, as a certificate
        lhs = pt.y * pt.y + curve.a1 * pt.x * pt.y + curve.a3 * pt.y
        rhs = pt.x**3 + curve.a2 * pt.x**2 + curve.a4 * pt.x + curve.a6
        if args.json:
            rec = dict(pt.to_json(), lhs=format_rational(lhs), rhs=format_rational(rhs))
            print(_dump(rec))
        else:
            xy = f"{format_rational(pt.x)},{format_rational(pt.y)}"
            print(f"{xy}    {format_rational(lhs)} = {format_rational(rhs)}")
    if not args.json:
        print(f"{len(found)} point(s)", file=sys.stderr)
    return EXIT_OK


def _read_record(line: str):
    data = json.loads(line)
    if not isinstance(data, dict):
        raise ValueError("record must be a JSON object")
    if "identity" in data:
        return parse_identity(data["identity"])
    lhs = tuple(Term.from_json(t) for t in data["lhs"])
    rhs = tuple(Term.from_json(t) for t in data["rhs"])
    if all(isinstance(t.value, int) or t.value.denominator == 1 for t in lhs + rhs):
        return IntegerSolution.from_json(data)
    return RationalSolution(lhs, rhs, str(data.get("provenance", "")))


def cmd_verify(args) -> int:
    try:
        lines = Path(args.file).read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    records, bad = [], []
    for no, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            records.append((no, _read_record(line)))
        except (ValueError, KeyError, TypeError) as exc:
            bad.append(f"line {no}: {exc}")
    if bad:
        for msg in bad:
            print(msg, file=sys.stderr)
        return EXIT_INPUT
    failures = 0
    for no, rec in records:
        ok = verify(rec)
        failures += not ok
        if args.json:
            print(_dump({"line": no, "verified": ok, "identity": str(rec)}))
        else:
            print(f"line {no}: {'verified' if ok else 'NOT VERIFIED'}  {rec}")
    return EXIT_UNVERIFIED if failures else EXIT_OK


def cmd_corpus(args) -> int:
    reports = run_corpus(args.dir)
    print(report_json(reports) if args.json else report_table(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_UNVERIFIED


# -- wiring -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dioph",
        description="Reduce X^3+Y^3+Z^3+aU^k = sum a_i U_i^t_i to elliptic curves "
        "and produce verified integer solutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def problem_args(p):
        p.add_argument("--problem", required=True, metavar="FILE", help="problem JSON or corpus fixture")
        p.add_argument("--shift", metavar="U0", help="u-coordinate of a known rational point on the quartic")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("construct", help="print the curve for a problem")
    problem_args(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve", help="integer solutions from multiples of a generator")
    problem_args(p)
    p.add_argument("--gen", required=True, metavar="X,Y")
    p.add_argument("--multiples", type=int, default=1, metavar="N")
    p.add_argument(
        "--store", nargs="?", const="", default=None, metavar="FILE",
        help="append to a solution store (default: $DIOPH_STORE or ./dioph_solutions.jsonl)",
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("search", help="naive bounded search for curve points")
    problem_args(p)
    p.add_argument("--num-bound", type=int, required=True, metavar="N")
    p.add_argument("--den-bound", type=int, default=1, metavar="N")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check identities in a JSONL file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="replay the built-in worked examples")
    p.add_argument("--dir", default=None, help="fixture directory (default: built-in)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotSquareError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEEDS_SHIFT
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNVERIFIED
    except (InputError, DiophError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
