"""Command-line interface: ``analyze``, ``graph`` and ``corpus`` subcommands."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .corpus import load_cases, run_corpus, summary_table
from .graph_model import GraphError, from_json, to_dot
from .pipeline import DEFAULT_SEED, EXIT_ERROR, EXIT_OK, analyze_graph, analyze_ideal, render_text


def _default_seed() -> int:
    raw = os.environ.get("IZETA_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"IZETA_SEED must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="izeta",
        description="Topological zeta functions, monodromy zeta functions and monodromy-conjecture "
        "certificates for ideals in two variables.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the full pipeline on an ideal")
    a.add_argument("--ideal", required=True, help='generators, e.g. "x^3*y, x^6+y^4"')
    a.add_argument("--seed", type=int, default=None, help=f"seed for generic choices (default {DEFAULT_SEED}, or IZETA_SEED)")
    a.add_argument("--json", type=Path, help="write the JSON report here ('-' for stdout)")
    a.add_argument("--dot", type=Path, help="write the dual graph in DOT format here")
    a.add_argument("--no-conjecture", action="store_true", help="skip the conjecture check")
    a.add_argument("--timing", action="store_true", help="print stage timings")

    g = sub.add_parser("graph", help="analyze a dual graph given as JSON")
    g.add_argument("--in", dest="input", required=True, type=Path, help="graph JSON file")
    g.add_argument("--zeta", action="store_true", help="topological zeta function and poles")
    g.add_argument("--monodromy", action="store_true", help="monodromy zeta functions")
    g.add_argument("--check-conjecture", action="store_true", help="conjecture certificates")
    g.add_argument("--json", type=Path, help="write the JSON report here ('-' for stdout)")
    g.add_argument("--dot", type=Path, help="write the dual graph in DOT format here")

    c = sub.add_parser("corpus", help="run every case in a directory")
    c.add_argument("--dir", required=True, type=Path)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--seed", type=int, default=None)
    return parser


def _write(path: Path, text: str):
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        path.write_text(text)


def _emit(report, args) -> int:
    if args.json is None or str(args.json) != "-":
        sys.stdout.write(render_text(report, timing=getattr(args, "timing", False)))
    if args.json is not None:
        _write(args.json, report.to_json())
    if args.dot is not None and report.graph is not None:
        _write(args.dot, to_dot(report.graph))
    if "error" in report.data:
        print(f"error: {report.data['error']}", file=sys.stderr)
    return report.exit_code


def run_analyze(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    report = analyze_ideal(args.ideal, seed=seed, conjecture=not args.no_conjecture)
    return _emit(report, args)


def run_graph(args) -> int:
    try:
        g = from_json(args.input.read_text())
    except FileNotFoundError:
        print(f"error: no such file: {args.input}", file=sys.stderr)
        return EXIT_ERROR
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    wanted = (args.zeta, args.monodromy, args.check_conjecture)
    if not any(wanted):
        wanted = (True, True, True)
    report = analyze_graph(g, *wanted)
    return _emit(report, args)


def run_corpus_command(args) -> int:
    try:
        cases = load_cases(args.dir)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if not cases:
        print(f"error: no cases found in {args.dir}", file=sys.stderr)
        return EXIT_ERROR
    seed = args.seed if args.seed is not None else _default_seed()
    results = run_corpus(cases, jobs=args.jobs, seed=seed)
    sys.stdout.write(summary_table(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    handlers = {"analyze": run_analyze, "graph": run_graph, "corpus": run_corpus_command}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
