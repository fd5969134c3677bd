"""Acceptance gate: nine criteria, one printed pass/fail line each.

Run with `pytest tests/test_acceptance.py -v`; the per-criterion lines
bypass capture so they always reach the terminal.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction as F
from pathlib import Path

import pytest

from planecrit.criticality import (NotClass2, check_lemma_bounds,
                                   extract_critical_subgraph, is_critical)
from planecrit.discharge import (run_discharge, theorem1_certificate,
                                 theorem2_certificate, theorem2_ruleset)
from planecrit.dsl import DslError, format_ruleset, parse_ruleset
from planecrit.edge_coloring import (chromatic_index_exact, is_proper,
                                     vizing_color)
from planecrit.graph import Graph
from planecrit.io_formats import CorpusRecord
from planecrit.search_harness import TaskSet, scan

import polyhedra as P
from oracles import brute_force_chromatic_index

MALFORMED = sorted((Path(__file__).parent / "data" / "dsl_malformed").glob("*.dsl"))


@contextmanager
def criterion(capsys, num, label):
    started = time.perf_counter()
    box = {}
    try:
        yield box
    except BaseException:
        with capsys.disabled():
            print(f"criterion {num} ({label}): FAIL")
        raise
    detail = box.get("detail", "")
    with capsys.disabled():
        print(f"criterion {num} ({label}): PASS"
              f" [{time.perf_counter() - started:.1f}s]"
              + (f" {detail}" if detail else ""))


def test_criterion_1_euler_faces(capsys, planar_corpus):
    with criterion(capsys, 1, "Euler/face suite") as box:
        started = time.perf_counter()
        assert len(planar_corpus) >= 10_000
        for g in planar_corpus:
            assert g.euler_characteristic() == 2
            faces = g.faces()
            assert sum(f.degree - 4 for f in faces) == 2 * g.m - 4 * len(faces)
        elapsed = time.perf_counter() - started
        assert elapsed < 60
        box["detail"] = f"{len(planar_corpus)} graphs, n <= 10"


def test_criterion_2_coloring_oracles(capsys, atlas_graphs):
    with criterion(capsys, 2, "coloring oracle equivalence") as box:
        started = time.perf_counter()
        for n, edges in atlas_graphs:
            g = Graph.from_edges(n, edges)
            res = chromatic_index_exact(g)
            assert res.chi == brute_force_chromatic_index(g)
            assert is_proper(g, res.coloring, res.chi) or not edges
        rng = random.Random(20260823)
        for _ in range(10_000):
            n = rng.randint(1, 12)
            p = rng.random()
            edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                     if rng.random() < p]
            g = Graph.from_edges(n, edges)
            ec = vizing_color(g)
            assert is_proper(g, ec.colors) or not edges
            if edges:
                assert max(ec.colors.values()) <= g.max_degree() + 1
        elapsed = time.perf_counter() - started
        assert elapsed < 600
        box["detail"] = (f"{len(atlas_graphs)} atlas graphs exact, "
                         "10000 random graphs constructive")


def test_criterion_3_criticality_soundness(capsys):
    with criterion(capsys, 3, "criticality soundness") as box:
        certs = [is_critical(P.cycle(3), 2), is_critical(P.cycle(5), 2)]
        with pytest.raises(NotClass2):
            is_critical(P.complete(4), 3)
        certs.append(is_critical(P.overfull_delta5(), 5))
        for cert in certs:
            assert cert.revalidate()
        box["detail"] = "C3, C5, overfull-delta5 certified; K4 rejected"


def test_criterion_4_lemma_bounds(capsys):
    with criterion(capsys, 4, "critical edge bounds") as box:
        cert5 = is_critical(P.overfull_delta5(), 5)
        g5 = cert5.graph()
        assert 7 * g5.m >= 15 * g5.n
        assert check_lemma_bounds(cert5, g5).applicable

        sub, cert6 = extract_critical_subgraph(P.subdivided_k7(), 6)
        assert cert6.revalidate()
        assert 2 * sub.m >= 5 * sub.n + 3
        assert check_lemma_bounds(cert6, sub).applicable
        box["detail"] = (f"5-critical: 7*{g5.m} >= 15*{g5.n}; "
                         f"6-critical: 2*{sub.m} >= 5*{sub.n}+3 "
                         "(synthetic non-planar fixtures)")


def test_criterion_5_discharging_golden_values(capsys):
    with criterion(capsys, 5, "discharging golden values") as box:
        rs = theorem2_ruleset()
        cube = run_discharge(P.plane(P.CUBE), rs)
        assert cube.final[("vertex", 0)] == F(2, 7)
        pent = run_discharge(P.plane(P.PENT_CHORD), rs)
        assert pent.final[("vertex", 1)] == F(2, 7) + F(1, 5) - F(1, 3)
        assert pent.final[("vertex", 1)] == F(16, 105)
        dbl = run_discharge(P.plane(P.DOUBLE_TRI), rs)
        assert dbl.final[("vertex", 0)] == F(2, 105)
        dode = run_discharge(P.plane(P.DODECAHEDRON), rs)
        assert dode.total_initial() == dode.total_final() == F(124, 7)
        box["detail"] = "2/7, 16/105, 2/105; dodecahedron total 124/7"


def test_criterion_6_theorem1_machine_check(capsys, planar_corpus):
    with criterion(capsys, 6, "theorem-1 machine check") as box:
        started = time.perf_counter()
        satisfied = 0
        for g in planar_corpus:
            verdict = theorem1_certificate(g)  # raises on negative charge
            if verdict.status == "NotSixCritical":
                assert verdict.surplus >= 0
                assert all(q >= 0 for q in verdict.ledger.final.values())
                satisfied += 1
        elapsed = time.perf_counter() - started
        assert elapsed < 60
        assert satisfied > 0
        box["detail"] = f"premise held on {satisfied}/{len(planar_corpus)}"


def test_criterion_7_theorem2_machine_check(capsys, planar_corpus):
    with criterion(capsys, 7, "theorem-2 machine check") as box:
        satisfied = 0
        for g in planar_corpus:
            # raises DerivedFactFailure / NonNegativityFailure on violation
            verdict = theorem2_certificate(g)
            if verdict.status == "NotFiveCritical":
                assert verdict.surplus >= 0
                satisfied += 1
        assert satisfied > 0

        # conclusion side: any certified 5-critical plane graph must show a
        # 3-face adjacent to a 3- or 4-face; the scan flags violations fatal
        corpus = [CorpusRecord(i, g) for i, g in enumerate(planar_corpus)]
        report = scan(corpus, TaskSet(theorem2=True, certify_critical=5),
                      jobs=2)
        assert report.anomalies == []
        certified = sum(1 for r in report.records
                        if r.results["critical"] == "certified")
        box["detail"] = (f"premise held on {satisfied}/{len(planar_corpus)}; "
                         f"{certified} certified 5-critical, 0 anomalies")


def test_criterion_8_figure1_regression(capsys):
    with criterion(capsys, 8, "figure-1 regression") as box:
        g = P.plane(P.FIG1)
        assert g.incident_3face_count(3) == 1
        smaller = g.delete_vertex(0)
        assert smaller.incident_3face_count(3) == 2
        box["detail"] = "3-face count at v: 1 before, 2 after deleting u"


def test_criterion_9_dsl_roundtrip(capsys, fixtures_dir):
    with criterion(capsys, 9, "DSL round-trip") as box:
        for name in ("theorem1.dsl", "theorem2.dsl"):
            rs = parse_ruleset((fixtures_dir / name).read_text())
            assert parse_ruleset(format_ruleset(rs)) == rs
        assert len(MALFORMED) == 20
        for path in MALFORMED:
            with pytest.raises(DslError) as exc:
                parse_ruleset(path.read_text())
            assert exc.value.line >= 1 and exc.value.column >= 1
        box["detail"] = "2 shipped rule sets; 20 malformed fixtures positioned"
