import random
from fractions import Fraction as F

import networkx as nx
import pytest

from planecrit.discharge import (ChargeLedger, NonNegativityFailure,
                                 run_discharge, theorem1_certificate,
                                 theorem1_ruleset, theorem2_certificate,
                                 theorem2_ruleset)
from planecrit.dsl import parse_ruleset
from planecrit.plane_graph import Disconnected, from_rotations

import polyhedra as P
from oracles import nx_plane_graph


def test_triangle_theorem1_ledger():
    led = run_discharge(P.triangle(), theorem1_ruleset())
    for v in range(3):
        assert led.final[("vertex", v)] == F(1, 3)
    for i in range(2):
        assert led.final[("face", i)] == F(0)
    assert led.total_initial() == led.total_final() == F(1)


def test_dodecahedron_theorem2_ledger():
    g = P.plane(P.DODECAHEDRON)
    led = run_discharge(g, theorem2_ruleset())
    assert {led.final[("vertex", v)] for v in range(20)} == {F(31, 35)}
    assert {led.final[("face", i)] for i in range(12)} == {F(0)}
    assert led.total_final() == F(124, 7)


def test_empty_ruleset_is_identity():
    rs = parse_ruleset('ruleset "idle"\n'
                       'charge vertex v := 1\ncharge face f := deg(f) - 4\n')
    g = P.plane(P.CUBE)
    led = run_discharge(g, rs)
    assert led.final == led.initial
    assert led.transfers == ()


def test_missing_charge_defaults_to_zero():
    rs = parse_ruleset('ruleset "bare"\n')
    led = run_discharge(P.triangle(), rs)
    assert set(led.final.values()) == {F(0)}


def test_disconnected_refused():
    g = from_rotations(6, [[1, 2], [2, 0], [0, 1], [4, 5], [5, 3], [3, 4]])
    with pytest.raises(Disconnected):
        run_discharge(g, theorem1_ruleset())


def test_conservation_on_random_plane_graphs():
    rng = random.Random(7)
    rs2 = theorem2_ruleset()
    checked = 0
    while checked < 60:
        n = rng.randint(3, 9)
        G = nx.gnp_random_graph(n, rng.uniform(0.3, 0.8),
                                seed=rng.randrange(2 ** 32))
        if not nx.is_connected(G):
            continue
        pg = nx_plane_graph(G)
        if pg is None:
            continue
        led = run_discharge(pg, rs2)
        assert led.total_initial() == led.total_final()
        # engine identity: total equals (2/7)|V| + (2|E| - 4|F|)
        expected = F(2, 7) * pg.n + 2 * pg.m - 4 * len(pg.faces())
        assert led.total_final() == expected
        checked += 1


def test_ledger_json_and_table():
    led = run_discharge(P.triangle(), theorem1_ruleset())
    blob = led.to_json_dict()
    assert blob["total"] == "1"
    assert any(t["rule"] == "R1" for t in blob["transfers"])
    table = led.to_table()
    assert "total" in table and "1/3" in table


# -- theorem certificates ---------------------------------------------------

def test_theorem1_dodecahedron():
    verdict = theorem1_certificate(P.plane(P.DODECAHEDRON))
    assert verdict.status == "NotSixCritical"
    assert verdict.surplus == F(32)  # 20 + 12*(5-4)


def test_theorem1_icosahedron_premise_fails():
    verdict = theorem1_certificate(P.plane(P.ICOSAHEDRON))
    assert verdict.status == "PremiseFails"
    assert verdict.witness is not None


def test_theorem1_fig1():
    verdict = theorem1_certificate(P.plane(P.FIG1))
    assert verdict.status == "NotSixCritical"
    assert verdict.surplus == F(2)


def test_theorem2_dodecahedron():
    verdict = theorem2_certificate(P.plane(P.DODECAHEDRON))
    assert verdict.status == "NotFiveCritical"
    assert verdict.surplus == F(124, 7)


def test_theorem2_octahedron_premise_fails():
    verdict = theorem2_certificate(P.plane(P.OCTAHEDRON))
    assert verdict.status == "PremiseFails"


def test_theorem2_golden_vertex_bounds():
    # vertex on no 3-face, all faces 4-faces: exactly 2/7
    cube = run_discharge(P.plane(P.CUBE), theorem2_ruleset())
    assert cube.final[("vertex", 0)] == F(2, 7)
    # vertex on one 3-face and one 5-face: 2/7 + 1/5 - 1/3 = 16/105
    pent = run_discharge(P.plane(P.PENT_CHORD), theorem2_ruleset())
    assert pent.final[("vertex", 1)] == F(16, 105)
    # vertex on two 3-faces and two 5-faces: 2/105
    dt = run_discharge(P.plane(P.DOUBLE_TRI), theorem2_ruleset())
    assert dt.final[("vertex", 0)] == F(2, 105)


def test_theorem2_double_triangle_certificate():
    verdict = theorem2_certificate(P.plane(P.DOUBLE_TRI))
    assert verdict.status == "NotFiveCritical"


def test_final_charges_nonnegative_under_premise():
    for rots in (P.TRIANGLE, P.K4_ROT, P.CUBE, P.DODECAHEDRON, P.FIG1,
                 P.PENT_CHORD, P.DOUBLE_TRI):
        g = P.plane(rots)
        verdict = theorem1_certificate(g)
        if verdict.status == "NotSixCritical":
            assert all(q >= 0 for q in verdict.ledger.final.values())
