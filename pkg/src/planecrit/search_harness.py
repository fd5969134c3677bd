"""Corpus scanning: classify, certify criticality, evaluate the theorem
predicates and the edge bounds, and aggregate a deterministic report.

Graphs are independent work units; per-graph analysis may run in a worker
pool, but records are always assembled in corpus order and a per-graph
solver budget keeps one hard instance from starving the scan.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import criticality, discharge
from .edge_coloring import DEFAULT_BUDGET, BudgetExceeded, is_class_one
from .graph import Graph
from .io_formats import CorpusRecord
from .plane_graph import PlaneGraph


@dataclass(frozen=True)
class TaskSet:
    classify: bool = False
    certify_critical: Optional[int] = None  # the k to certify
    theorem1: bool = False
    theorem2: bool = False
    lemma_bounds: bool = False
    figure1_heredity: bool = False

    NAMES = ("classify", "certify-critical", "theorem1", "theorem2",
             "lemma-bounds", "figure1-heredity")

    def needs_embedding(self) -> bool:
        return self.theorem1 or self.theorem2 or self.figure1_heredity

    @classmethod
    def parse(cls, names: Iterable[str], critical_k: Optional[int] = None
              ) -> "TaskSet":
        kwargs = {}
        for raw in names:
            name = raw.strip()
            if name == "classify":
                kwargs["classify"] = True
            elif name == "certify-critical":
                if critical_k is None:
                    raise ValueError("certify-critical needs a k value")
                kwargs["certify_critical"] = critical_k
            elif name == "theorem1":
                kwargs["theorem1"] = True
            elif name == "theorem2":
                kwargs["theorem2"] = True
            elif name == "lemma-bounds":
                kwargs["lemma_bounds"] = True
            elif name == "figure1-heredity":
                kwargs["figure1_heredity"] = True
            else:
                raise ValueError(f"unknown task {name!r}")
        return cls(**kwargs)


@dataclass
class GraphRecord:
    index: int
    n: int
    m: int
    delta: int
    embedded: bool
    results: dict = field(default_factory=dict)
    anomalies: list = field(default_factory=list)
    seconds: float = 0.0

    def to_json_dict(self) -> dict:
        return {"index": self.index, "n": self.n, "m": self.m,
                "delta": self.delta, "embedded": self.embedded,
                "results": self.results, "anomalies": self.anomalies,
                "seconds": round(self.seconds, 6)}


@dataclass
class ScanReport:
    records: list[GraphRecord]
    summary: dict[str, int]
    anomalies: list[str]

    def to_json(self) -> str:
        return json.dumps({
            "records": [r.to_json_dict() for r in self.records],
            "summary": dict(sorted(self.summary.items())),
            "anomalies": self.anomalies,
        }, indent=2)

    def to_table(self) -> str:
        lines = [f"graphs scanned: {len(self.records)}"]
        for key, count in sorted(self.summary.items()):
            lines.append(f"  {key}: {count}")
        if self.anomalies:
            lines.append(f"ANOMALIES ({len(self.anomalies)}):")
            lines.extend(f"  {a}" for a in self.anomalies)
        else:
            lines.append("no anomalies")
        return "\n".join(lines)


def _analyze(args: tuple[int, object, TaskSet, int]) -> GraphRecord:
    index, g, tasks, budget = args
    started = time.perf_counter()
    plane = g if isinstance(g, PlaneGraph) else None
    abstract = Graph.from_plane(g) if plane is not None else g
    assert isinstance(abstract, Graph)
    rec = GraphRecord(index=index, n=abstract.n, m=abstract.m,
                      delta=abstract.max_degree(), embedded=plane is not None)
    res = rec.results

    if tasks.classify:
        try:
            verdict = is_class_one(abstract, budget)
            res["class"] = 1 if verdict.class_one else 2
            res["chi"] = verdict.chi
        except BudgetExceeded:
            res["class"] = "budget_exceeded"

    cert = None
    if tasks.certify_critical is not None:
        k = tasks.certify_critical
        try:
            cert = criticality.is_critical(abstract, k, budget)
            res["critical"] = "certified"
            if not cert.revalidate():
                rec.anomalies.append(
                    f"graph {index}: certificate failed revalidation")
        except criticality.WrongDelta:
            res["critical"] = "wrong_delta"
        except criticality.NotClass2:
            res["critical"] = "not_class2"
        except criticality.NonCriticalEdge as exc:
            res["critical"] = f"non_critical_edge:{exc.edge}"
        except criticality.CriticalityError as exc:
            res["critical"] = f"refused:{exc}"
        except BudgetExceeded:
            res["critical"] = "budget_exceeded"
        if cert is not None and plane is not None:
            _check_theorem_conclusions(rec, plane, cert.k)

    if tasks.lemma_bounds:
        if cert is None:
            res["lemma_bounds"] = "no_certificate"
        else:
            try:
                verdict = criticality.check_lemma_bounds(cert, abstract)
                res["lemma_bounds"] = (verdict.inequality if verdict.applicable
                                       else "not_applicable")
            except criticality.BoundViolated as exc:
                res["lemma_bounds"] = "VIOLATED"
                rec.anomalies.append(f"graph {index}: {exc}")

    if tasks.theorem1:
        _run_theorem(rec, plane, 1)
    if tasks.theorem2:
        _run_theorem(rec, plane, 2)

    if tasks.figure1_heredity:
        res["figure1_heredity"] = _heredity_witness(plane) if plane else "no_embedding"

    rec.seconds = time.perf_counter() - started
    return rec


def _run_theorem(rec: GraphRecord, plane: Optional[PlaneGraph], which: int) -> None:
    key = f"theorem{which}"
    if plane is None:
        rec.results[key] = "no_embedding"
        return
    if not plane.is_connected():
        rec.results[key] = "disconnected"
        return
    fn = (discharge.theorem1_certificate if which == 1
          else discharge.theorem2_certificate)
    try:
        verdict = fn(plane)
        rec.results[key] = verdict.status
    except (discharge.NonNegativityFailure, discharge.DerivedFactFailure) as exc:
        rec.results[key] = "FATAL"
        rec.anomalies.append(f"graph {rec.index}: {key}: {exc}")


def _check_theorem_conclusions(rec: GraphRecord, plane: PlaneGraph, k: int) -> None:
    """Machine-checked form of the theorems on certified critical plane
    graphs; a violation is a fatal anomaly."""
    if k == 5:
        # some 3-face must be adjacent to a 3-face or a 4-face
        ok = any(face.degree == 3
                 and any(d <= 4 for d in plane.adjacent_face_degrees(face))
                 for face in plane.faces())
        rec.results["theorem2_conclusion"] = ok
        if not ok:
            rec.anomalies.append(
                f"graph {rec.index}: certified 5-critical plane graph with no "
                "3-face adjacent to a 3- or 4-face")
    elif k == 6:
        ok = any(plane.incident_3face_count(v) >= 4 for v in plane.vertices())
        rec.results["corollary_conclusion"] = ok
        if not ok:
            rec.anomalies.append(
                f"graph {rec.index}: certified 6-critical plane graph where "
                "every vertex meets at most three 3-faces")


def _heredity_witness(plane: PlaneGraph) -> Optional[list[int]]:
    """A pair (u, v) whose deletion of u raises v's 3-face count, if any."""
    if plane.n <= 1:
        return None
    base = {v: plane.incident_3face_count(v) for v in plane.vertices()}
    for u in plane.vertices():
        smaller = plane.delete_vertex(u)
        for v in smaller.rotations:
            if smaller.incident_3face_count(v) > base[v]:
                return [u, v]
    return None


def scan(corpus: Iterable[CorpusRecord], tasks: TaskSet,
         budget: int = DEFAULT_BUDGET, jobs: int = 1) -> ScanReport:
    """Process every corpus graph; returns a deterministic report
    (identical inputs give identical reports modulo the timing fields)."""
    work = [(rec.index, rec.graph, tasks, budget) for rec in corpus]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_analyze, work, chunksize=16))
    else:
        records = [_analyze(item) for item in work]

    summary: dict[str, int] = {}
    anomalies: list[str] = []
    for rec in records:
        for key, value in rec.results.items():
            label = f"{key}={value}"
            summary[label] = summary.get(label, 0) + 1
        anomalies.extend(rec.anomalies)
    return ScanReport(records=records, summary=summary, anomalies=anomalies)
