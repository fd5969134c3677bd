"""Command-line entry point.

Exit codes: 0 success, 1 anomaly or violated bound, 2 usage or parse error.
Face-dependent subcommands reject graph6 input: graph6 carries no
embedding and embeddings are never invented.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import criticality, discharge, search_harness
from .dsl import DslError, parse_ruleset
from .edge_coloring import (BudgetExceeded, chromatic_index_exact, is_proper,
                            vizing_color)
from .graph import Graph
from .io_formats import CorpusRecord, FormatError, read_corpus
from .plane_graph import PlaneGraph, PlaneGraphError

EXIT_OK = 0
EXIT_ANOMALY = 1
EXIT_USAGE = 2

FACE_DEPENDENT = {"faces", "discharge", "certify"}


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _load_graphs(args) -> list[CorpusRecord]:
    data = _read_input(args.input)
    try:
        records = list(read_corpus(data, args.format))
    except (FormatError, PlaneGraphError) as exc:
        raise CliError(f"corpus parse error: {exc}") from exc
    if args.command in FACE_DEPENDENT or (
            args.command == "scan" and _scan_tasks(args).needs_embedding()):
        for rec in records:
            if not isinstance(rec.graph, PlaneGraph):
                raise CliError(
                    f"'{args.command}' needs an embedding, but record "
                    f"{rec.index} is an abstract (graph6) graph")
    return records


def _emit(args, payload: dict | list, text: str) -> None:
    if args.output == "json":
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(text + "\n")


def _abstract(g) -> Graph:
    return Graph.from_plane(g) if isinstance(g, PlaneGraph) else g


def cmd_faces(args) -> int:
    payload = []
    lines = []
    for rec in _load_graphs(args):
        g = rec.graph
        faces = [{"degree": f.degree, "walk": [list(d) for d in f.walk]}
                 for f in g.faces()]
        payload.append({"index": rec.index, "n": g.n, "m": g.m,
                        "euler": g.euler_characteristic() if g.is_connected() else None,
                        "faces": faces})
        degs = ",".join(str(f.degree) for f in g.faces())
        lines.append(f"graph {rec.index}: n={g.n} m={g.m} face degrees [{degs}]")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_color(args) -> int:
    payload = []
    lines = []
    for rec in _load_graphs(args):
        g = _abstract(rec.graph)
        ec = vizing_color(g)
        assert is_proper(g, ec.colors) or not g.edges
        payload.append({"index": rec.index, "colors_used": ec.colors_used(),
                        "coloring": {f"{u},{v}": c for (u, v), c in sorted(ec.colors.items())}})
        lines.append(f"graph {rec.index}: proper with {ec.colors_used()} colors")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_chromatic_index(args) -> int:
    payload = []
    lines = []
    for rec in _load_graphs(args):
        g = _abstract(rec.graph)
        try:
            res = chromatic_index_exact(g, args.budget)
            payload.append({"index": rec.index, "chi": res.chi,
                            "delta": g.max_degree(),
                            "refuted_lower": res.refuted_lower})
            lines.append(f"graph {rec.index}: chi' = {res.chi}")
        except BudgetExceeded:
            payload.append({"index": rec.index, "chi": None,
                            "delta": g.max_degree(), "budget_exceeded": True})
            lines.append(f"graph {rec.index}: budget exceeded "
                         f"(chi' in {{{g.max_degree()}, {g.max_degree() + 1}}})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_critical(args) -> int:
    payload = []
    lines = []
    code = EXIT_OK
    for rec in _load_graphs(args):
        g = _abstract(rec.graph)
        try:
            cert = criticality.is_critical(g, args.k, args.budget)
            entry = {"index": rec.index, "critical": True,
                     "certificate": json.loads(cert.to_json())}
            lines.append(f"graph {rec.index}: {args.k}-critical (certified)")
        except criticality.CriticalityError as exc:
            entry = {"index": rec.index, "critical": False, "reason": str(exc)}
            lines.append(f"graph {rec.index}: not {args.k}-critical ({exc})")
        except BudgetExceeded as exc:
            entry = {"index": rec.index, "critical": None, "reason": str(exc)}
            lines.append(f"graph {rec.index}: undecided ({exc})")
        payload.append(entry)
    _emit(args, payload, "\n".join(lines))
    return code


def cmd_discharge(args) -> int:
    try:
        text = _read_input(args.rules).decode("utf-8")
        ruleset = parse_ruleset(text)
    except DslError as exc:
        raise CliError(f"rule set parse error: {exc}") from exc
    payload = []
    tables = []
    for rec in _load_graphs(args):
        ledger = discharge.run_discharge(rec.graph, ruleset)
        payload.append({"index": rec.index, "ledger": ledger.to_json_dict()})
        tables.append(f"graph {rec.index}, ruleset {ledger.ruleset!r}\n"
                      + ledger.to_table())
    _emit(args, payload, "\n\n".join(tables))
    return EXIT_OK


def cmd_certify(args) -> int:
    fn = (discharge.theorem1_certificate if args.theorem == 1
          else discharge.theorem2_certificate)
    payload = []
    lines = []
    code = EXIT_OK
    for rec in _load_graphs(args):
        try:
            verdict = fn(rec.graph)
            payload.append({"index": rec.index, **verdict.to_json_dict()})
            extra = f" (surplus {verdict.surplus})" if verdict.surplus is not None else ""
            lines.append(f"graph {rec.index}: {verdict.status}{extra}")
        except (discharge.NonNegativityFailure,
                discharge.DerivedFactFailure) as exc:
            payload.append({"index": rec.index, "status": "FATAL",
                            "error": str(exc)})
            lines.append(f"graph {rec.index}: FATAL: {exc}")
            code = EXIT_ANOMALY
    _emit(args, payload, "\n".join(lines))
    return code


def _scan_tasks(args) -> search_harness.TaskSet:
    try:
        return search_harness.TaskSet.parse(args.tasks.split(","),
                                            args.critical_k)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def cmd_scan(args) -> int:
    tasks = _scan_tasks(args)
    report = search_harness.scan(_load_graphs(args), tasks,
                                 budget=args.budget, jobs=args.jobs)
    _emit(args, json.loads(report.to_json()), report.to_table())
    return EXIT_ANOMALY if report.anomalies else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planecrit",
        description="Plane-graph edge-chromatic toolkit: faces, colorings, "
                    "criticality certificates, discharging.")
    sub = parser.add_subparsers(dest="command", required=True)
    default_budget = int(os.environ.get("PLANECRIT_BUDGET", 10_000_000))

    def common(p):
        p.add_argument("--in", dest="input", default="-",
                       help="input path, or - for stdin (default)")
        p.add_argument("--format", choices=["auto", "graph6", "planar_code", "json"],
                       default="auto", help="input format (default: sniffed)")
        p.add_argument("--output", choices=["json", "text"], default="text")
        p.add_argument("--budget", type=int, default=default_budget,
                       help="solver search-node budget per graph")

    common(sub.add_parser("faces", help="face degrees and walks"))
    common(sub.add_parser("color", help="constructive (max degree+1)-coloring"))
    common(sub.add_parser("chromatic-index", help="exact chromatic index"))
    p = sub.add_parser("critical", help="certify k-criticality")
    common(p)
    p.add_argument("--k", type=int, required=True)
    p = sub.add_parser("discharge", help="run a discharging rule set")
    common(p)
    p.add_argument("--rules", required=True, help="rule-set DSL file")
    p = sub.add_parser("certify", help="theorem-level discharging certificate")
    common(p)
    p.add_argument("--theorem", type=int, choices=[1, 2], required=True)
    p = sub.add_parser("scan", help="scan a corpus and aggregate a report")
    common(p)
    p.add_argument("--tasks", required=True,
                   help="comma-separated subset of: "
                        + ", ".join(search_harness.TaskSet.NAMES))
    p.add_argument("--critical-k", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    return parser


COMMANDS = {
    "faces": cmd_faces,
    "color": cmd_color,
    "chromatic-index": cmd_chromatic_index,
    "critical": cmd_critical,
    "discharge": cmd_discharge,
    "certify": cmd_certify,
    "scan": cmd_scan,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (criticality.BoundViolated, discharge.NonNegativityFailure,
            discharge.DerivedFactFailure) as exc:
        print(f"fatal anomaly: {exc}", file=sys.stderr)
        return EXIT_ANOMALY


if __name__ == "__main__":
    sys.exit(main())
