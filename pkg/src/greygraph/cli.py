"""Command-line interface: ``greygraph {solve,graph,convert}``.

Exit status is 0 on success, 1 on input errors and 2 when an internal
invariant check fails.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings

import numpy as np

from . import graph as gg
from .core import GreyInterval, GreyNumber, from_interval, to_interval
from .graph import GraphError
from .io import (
    ParseError,
    dump_graph,
    emit_report,
    export_dot,
    load_problem,
    parse_graph,
)
from .madm import GreyDataWarning, ProblemError, Solution, solve

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


class InvariantError(RuntimeError):
    pass


def _write(data: bytes, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _check_solution(sol: Solution) -> None:
    nm = sol.normalized
    if not (np.all(nm.r_lower >= 0.0) and np.all(nm.r_upper <= 1.0) and np.all(nm.r_lower <= nm.r_upper)):
        raise InvariantError("normalized intervals left the unit domain")
    n = len(sol.problem.alternatives)
    if sorted(sol.ranking.order) != list(range(n)):
        raise InvariantError("ranking order is not a permutation of the alternatives")
    # greyness never decreases through aggregation
    if np.any(sol.aggregates.greyness < sol.problem.weights.greyness.max()):
        raise InvariantError("aggregate greyness fell below a weight greyness")
    if np.any(sol.aggregates.greyness[:, None] < sol.propagated.greyness):
        raise InvariantError("aggregate greyness fell below a propagated greyness")


def _cmd_solve(args) -> int:
    problem = load_problem(args.input, args.format)
    sol = solve(problem, clamp=args.clamp, strict=args.strict_validation)
    _check_solution(sol)
    for w in sol.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.emit_dot:
        with open(args.emit_dot, "wb") as fh:
            fh.write(export_dot(problem.attribute_graph(), name="attributes"))
    _write(emit_report(sol, args.report), args.output)
    return EXIT_OK


def _load_graph(path: str, strict: bool = False) -> gg.GreyGraph:
    with open(path, "rb") as fh:
        return parse_graph(fh.read(), strict=strict)


def _cmd_graph(args) -> int:
    op = args.operation
    if op == "validate":
        g = _load_graph(args.input)
        report = gg.validate(g)
        if report.valid:
            print("valid" + (" (strong)" if gg.is_strong(g) else ""))
            return EXIT_OK
        for v in report.violations:
            print(str(v))
        print("invalid", file=sys.stderr)
        return EXIT_INPUT
    if op == "strong":
        g = _load_graph(args.input)
        result = gg.strong_completion(g.vertices)
    else:
        if not args.other:
            raise ParseError(f"graph {op} needs --other")
        g1, g2 = _load_graph(args.input, args.strict_validation), _load_graph(args.other, args.strict_validation)
        func = {"union": gg.union, "sum": gg.graph_sum, "product": gg.cartesian_product}[op]
        result = func(g1, g2)
    if args.dot:
        _write(export_dot(result), args.output)
    else:
        _write(dump_graph(result), args.output)
    return EXIT_OK


def _parse_pair(text: str, sep: str) -> tuple[float, float]:
    parts = text.split(sep)
    if len(parts) != 2:
        raise ParseError(f"cannot read {text!r}; expected a{sep}b")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise ParseError(f"cannot read {text!r}; expected numbers") from None


def _cmd_convert(args) -> int:
    if args.input:
        with open(args.input, "rb") as fh:
            try:
                items = json.loads(fh.read())
            except json.JSONDecodeError as exc:
                raise ParseError(f"malformed JSON: {exc.msg}") from None
        if not isinstance(items, list) or not all(isinstance(x, list) and len(x) == 2 for x in items):
            raise ParseError("convert input must be a JSON list of pairs")
        pairs = [(float(a), float(b)) for a, b in items]
    else:
        sep = ".." if args.direction == "to-grey" else ","
        pairs = [_parse_pair(v, sep) for v in args.values]
    out = []
    for a, b in pairs:
        if args.direction == "to-grey":
            try:
                g = from_interval(GreyInterval(a, b))
            except ValueError as exc:
                raise ParseError(str(exc)) from None
            out.append([g.kernel, g.greyness])
        else:
            try:
                iv = to_interval(GreyNumber(a, b))
            except ValueError as exc:
                raise ParseError(str(exc)) from None
            out.append([iv.lower, iv.upper])
    _write((json.dumps(out) + "\n").encode(), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="greygraph", description="Grey-graph decision engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="rank the alternatives of a decision problem")
    p.add_argument("--input", required=True, help="problem file (JSON or CSV)")
    p.add_argument("--format", choices=["json", "csv"], default=None, help="default: from file extension")
    p.add_argument("--output", default=None, help="report destination (default stdout)")
    p.add_argument("--report", choices=["text", "markdown", "json"], default="text")
    p.add_argument("--emit-dot", default=None, metavar="FILE", help="write the attribute grey graph as DOT")
    p.add_argument("--clamp", action="store_true", help="clamp propagated values into [0, 1]")
    p.add_argument(
        "--strict-validation",
        action="store_true",
        help="treat data warnings as errors and require a valid attribute graph",
    )
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("graph", help="grey graph operators on JSON graph files")
    p.add_argument("operation", choices=["strong", "union", "sum", "product", "validate"])
    p.add_argument("--input", required=True)
    p.add_argument("--other", default=None, help="second operand for union/sum/product")
    p.add_argument("--output", default=None)
    p.add_argument("--dot", action="store_true", help="emit DOT instead of graph JSON")
    p.add_argument("--strict-validation", action="store_true", help="reject invalid operand graphs")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("convert", help="intervals <-> (kernel, greyness)")
    p.add_argument("direction", choices=["to-grey", "to-interval"])
    p.add_argument("values", nargs="*", help="lo..hi (to-grey) or kernel,greyness (to-interval)")
    p.add_argument("--input", default=None, help="JSON list of pairs instead of positional values")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_convert)
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        with warnings.catch_warnings():
            # solve already reports its warnings on stderr
            warnings.simplefilter("ignore", GreyDataWarning)
            return args.func(args)
    except (ProblemError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - anything else is an internal failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
