"""Command-line interface.

Exit codes: 0 = proven / OK, 1 = refuted, 2 = unknown at the configured
bound (including the non-certifying outcome of `prove`), 3 = invalid
input or usage.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..corpus import document_to_algorithm
from ..equiv import (
    ALGORITHMIC,
    COMPUTATIONAL,
    DEFAULT_BOUND,
    DEFAULT_ISO_BUDGET,
    DEFAULT_MAP_CAP,
    check_aeqv,
    check_ceqv,
    check_isomorphism,
)
from ..errors import NotAlgorithmProcess, ProtoAlgError
from ..execution import DEFAULT_MAX_STEPS, run
from ..graph import AlgorithmGraph, to_dot, validate_algorithm_graph
from ..interp import check_interpretation
from ..prove import DEFAULT_PROVE_BOUND, prove_aeqv
from ..translate import graph_to_process, process_to_graph
from ..verdict import Verdict
from . import jsonio
from .gen import run_selftest
from .parser import ParseFailure, parse_or_raise, parse_value
from .pprint import print_algorithm
from ..procalg import Rec

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_UNKNOWN = 2
EXIT_INVALID = 3


def _load_document(path: str):
    return parse_or_raise(Path(path).read_text(encoding="utf-8"))


def _load_algorithm(path: str):
    return document_to_algorithm(_load_document(path))


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(jsonio.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def _verdict_exit(v: Verdict) -> int:
    if v.is_proven:
        return EXIT_OK
    if v.is_refuted:
        return EXIT_REFUTED
    return EXIT_UNKNOWN


def _cmd_validate(args) -> int:
    doc = _load_document(args.file)
    if doc.graph is None or doc.interp is None:
        raise ProtoAlgError("validate needs GRAPH and INTERP sections")
    g_report = validate_algorithm_graph(doc.alphabet, doc.graph)
    i_report = check_interpretation(doc.alphabet, doc.interp)
    ok = g_report.ok and i_report.ok
    if ok and args.dot:
        Path(args.dot).write_text(to_dot(AlgorithmGraph(doc.alphabet, doc.graph)), encoding="utf-8")
    payload = {
        "ok": ok,
        "graph": jsonio.validation_report_json(g_report),
        "interpretation": jsonio.validation_report_json(i_report),
    }
    lines = [f"graph: {g_report}", f"interpretation: {i_report}"]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_REFUTED


def _cmd_run(args, record: bool) -> int:
    algorithm = _load_algorithm(args.file)
    record = record or args.trace
    result = run(
        algorithm,
        parse_value(args.input),
        max_steps=args.max_steps,
        record_algorithmic=record,
        record_computational=record,
    )
    payload = jsonio.run_result_json(result)
    if result.converged:
        lines = [f"converged: output {list(result.outcome.output)} in {result.outcome.step_count} steps"]
    else:
        lines = [f"diverged at bound {result.outcome.bound}"]
    if record and result.algorithmic_trace is not None and not args.json:
        lines += [f"  {jsonio.state_json(s)}" for s in result.algorithmic_trace]
    _emit(args, payload, lines)
    return EXIT_OK if result.converged else EXIT_UNKNOWN


def _cmd_iso(args) -> int:
    a, b = _load_algorithm(args.left), _load_algorithm(args.right)
    verdict = check_isomorphism(a, b, budget=args.budget)
    _emit(args, jsonio.verdict_json(verdict), [f"isomorphism: {verdict.status}"])
    return _verdict_exit(verdict)


def _cmd_equiv(args) -> int:
    a, b = _load_algorithm(args.left), _load_algorithm(args.right)
    checker = check_aeqv if args.kind == ALGORITHMIC else check_ceqv
    verdict = checker(a, b, bound=args.bound, map_cap=args.map_cap)
    _emit(args, jsonio.verdict_json(verdict), [f"{args.kind} equivalence: {verdict.status}"])
    return _verdict_exit(verdict)


def _cmd_to_process(args) -> int:
    doc = _load_document(args.file)
    if doc.graph is None:
        raise ProtoAlgError("to-process needs a GRAPH section")
    graph = AlgorithmGraph.checked(doc.alphabet, doc.graph)
    proc = graph_to_process(graph)
    text = print_algorithm(doc.alphabet, None, doc.interp, proc)
    if args.json:
        payload = {"root": proc.var, "text": text}
        sys.stdout.write(jsonio.dumps(payload))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_to_graph(args) -> int:
    doc = _load_document(args.file)
    if doc.process is None:
        raise ProtoAlgError("to-graph needs a PROCESS section")
    graph = process_to_graph(doc.process, doc.alphabet)
    text = print_algorithm(doc.alphabet, graph.graph, doc.interp)
    if args.json:
        sys.stdout.write(jsonio.dumps({"root": graph.graph.root, "text": text}))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_prove(args) -> int:
    a, b = _load_algorithm(args.left), _load_algorithm(args.right)
    inputs = [parse_value(args.input)] if args.input else None
    report = prove_aeqv(a, b, inputs=inputs, bound=args.bound)
    lines = [f"prove: {report.overall}"] + [
        f"  input {list(iv.input)}: {iv.verdict}" for iv in report.inputs
    ]
    _emit(args, jsonio.prove_report_json(report), lines)
    if report.overall == "proven":
        return EXIT_OK
    return EXIT_UNKNOWN


def _cmd_selftest(args) -> int:
    report = run_selftest(args.seed, args.count)
    lines = [
        f"families: {report['families']}",
        f"variants: {report['variants']}",
        f"failures: {len(report['failures'])}",
    ] + [f"  {f}" for f in report["failures"]]
    _emit(args, report, lines)
    return EXIT_OK if report["ok"] else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="protoalg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("validate", help="check the algorithm-graph and interpretation conditions")
    p.add_argument("file")
    p.add_argument("--dot", metavar="PATH", help="also write a DOT rendering")
    common(p)

    for name in ("run", "trace"):
        p = sub.add_parser(name, help="execute on one input" if name == "run" else "execute and record traces")
        p.add_argument("file")
        p.add_argument("--input", required=True, help="input value, e.g. '<2>' or '2'")
        p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
        p.add_argument("--trace", action="store_true", help="record traces (implied by the trace command)")
        common(p)

    p = sub.add_parser("iso", help="decide isomorphism")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--budget", type=int, default=DEFAULT_ISO_BUDGET)
    common(p)

    p = sub.add_parser("equiv", help="decide algorithmic or computational equivalence")
    p.add_argument("--kind", choices=[ALGORITHMIC, COMPUTATIONAL], default=ALGORITHMIC)
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--map-cap", type=int, default=DEFAULT_MAP_CAP)
    common(p)

    p = sub.add_parser("to-process", help="translate the graph to a linear recursive specification")
    p.add_argument("file")
    common(p)

    p = sub.add_parser("to-graph", help="translate a PROCESS section back to a graph")
    p.add_argument("file")
    common(p)

    p = sub.add_parser("prove", help="certify algorithmic equivalence through term equality")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--input", help="restrict to one input value")
    p.add_argument("--all", action="store_true", help="use every input (the default)")
    p.add_argument("--bound", type=int, default=DEFAULT_PROVE_BOUND)
    common(p)

    p = sub.add_parser("selftest", help="generate seeded families and check expected verdicts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "run":
            return _cmd_run(args, record=False)
        if args.command == "trace":
            return _cmd_run(args, record=True)
        if args.command == "iso":
            return _cmd_iso(args)
        if args.command == "equiv":
            return _cmd_equiv(args)
        if args.command == "to-process":
            return _cmd_to_process(args)
        if args.command == "to-graph":
            return _cmd_to_graph(args)
        if args.command == "prove":
            return _cmd_prove(args)
        if args.command == "selftest":
            return _cmd_selftest(args)
    except ParseFailure as exc:
        for diagnostic in exc.diagnostics:
            print(f"error: {diagnostic}", file=sys.stderr)
        return EXIT_INVALID
    except NotAlgorithmProcess as exc:
        print(f"error: {exc.diagnosis}", file=sys.stderr)
        return EXIT_REFUTED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ProtoAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
