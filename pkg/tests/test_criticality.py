import pytest

from planecrit.criticality import (BoundViolated, CriticalityCertificate,
                                   CriticalityError, NonCriticalEdge,
                                   NotClass2, WrongDelta, check_lemma_bounds,
                                   extract_critical_subgraph, is_critical,
                                   restrict_rotations)
from planecrit.edge_coloring import is_proper
from planecrit.graph import Graph

import polyhedra as P


def test_c3_is_2_critical():
    cert = is_critical(P.cycle(3), 2)
    assert cert.k == 2 and cert.class2_refutation
    assert cert.revalidate()


def test_c5_is_2_critical():
    assert is_critical(P.cycle(5), 2).revalidate()


def test_k4_rejected_not_class2():
    with pytest.raises(NotClass2) as exc:
        is_critical(P.complete(4), 3)
    assert is_proper(P.complete(4), exc.value.coloring, 3)


def test_wrong_delta():
    with pytest.raises(WrongDelta):
        is_critical(P.cycle(3), 5)


def test_c6_not_critical():
    # even cycle is class 1, refused as NotClass2
    with pytest.raises(NotClass2):
        is_critical(P.cycle(6), 2)


def test_non_critical_edge():
    # overfull delta-5 graph plus a pendant edge: still class 2, but the
    # pendant deletion keeps it class 2, so the graph is not critical
    base = P.overfull_delta5()
    g = Graph(base.vertices | {7}, base.edges | {(0, 7)})
    with pytest.raises(NonCriticalEdge):
        is_critical(g, 5)


def test_overfull_delta5_is_5_critical():
    assert is_critical(P.overfull_delta5(), 5).revalidate()


def test_extraction_subdivided_k4():
    sub, cert = extract_critical_subgraph(P.subdivided_k4(), 3)
    assert cert.k == 3 and cert.revalidate()
    assert sub.m <= P.subdivided_k4().m


def test_extraction_c5_is_fixed_point():
    sub, cert = extract_critical_subgraph(P.cycle(5), 2)
    assert sub == P.cycle(5)
    assert cert.revalidate()


def test_extraction_rejects_class1():
    with pytest.raises(NotClass2):
        extract_critical_subgraph(P.complete(4), 3)


def test_extraction_deterministic():
    a, _ = extract_critical_subgraph(P.subdivided_k7(), 6)
    b, _ = extract_critical_subgraph(P.subdivided_k7(), 6)
    assert a == b


def test_extraction_subdivided_k7_gives_6_critical():
    sub, cert = extract_critical_subgraph(P.subdivided_k7(), 6)
    assert cert.k == 6
    assert cert.revalidate()
    assert check_lemma_bounds(cert, sub).applicable


def test_certificate_json_roundtrip():
    cert = is_critical(P.cycle(5), 2)
    back = CriticalityCertificate.from_json(cert.to_json())
    assert back == cert
    assert back.revalidate()


def test_revalidation_catches_tampering():
    cert = is_critical(P.cycle(3), 2)
    e = next(iter(cert.per_edge_colorings))
    tampered = {**cert.per_edge_colorings}
    tampered[e] = {k: 1 for k in tampered[e]}  # all-same-color is improper
    bad = CriticalityCertificate(cert.k, cert.vertices, cert.edges,
                                 cert.class2_refutation, tampered)
    assert not bad.revalidate()


def test_certified_graphs_connected_min_degree_2():
    for g, k in [(P.cycle(3), 2), (P.cycle(5), 2), (P.overfull_delta5(), 5)]:
        cert = is_critical(g, k)
        gg = cert.graph()
        assert gg.is_connected()
        assert min(gg.degrees().values()) >= 2


def test_lemma_bounds_arithmetic():
    # k=5, |V|=14 demands |E| >= 30; 29 edges violate 7|E| >= 15|V|
    fake5 = CriticalityCertificate(5, tuple(range(14)), (), True, {})
    with pytest.raises(BoundViolated):
        check_lemma_bounds(fake5, _graph_with(14, 29))
    assert check_lemma_bounds(fake5, _graph_with(14, 30)).applicable

    # k=6, |V|=21 demands |E| >= 54
    fake6 = CriticalityCertificate(6, tuple(range(21)), (), True, {})
    with pytest.raises(BoundViolated):
        check_lemma_bounds(fake6, _graph_with(21, 53))
    assert check_lemma_bounds(fake6, _graph_with(21, 54)).applicable


def test_lemma_bounds_not_applicable_for_k2():
    cert = is_critical(P.cycle(5), 2)
    verdict = check_lemma_bounds(cert, P.cycle(5))
    assert not verdict.applicable


def test_lemma_bounds_on_real_certificates():
    cert5 = is_critical(P.overfull_delta5(), 5)
    assert check_lemma_bounds(cert5, cert5.graph()).applicable
    sub, cert6 = extract_critical_subgraph(P.subdivided_k7(), 6)
    assert check_lemma_bounds(cert6, sub).applicable


def test_restrict_rotations_keeps_embedding():
    g = P.plane(P.FIG1)
    sub = Graph.from_plane(g).delete_edge(1, 2)
    pg = restrict_rotations(g, sub)
    assert set(pg.edges()) == set(sub.edges)
    assert pg.euler_characteristic() == 2


def _graph_with(n: int, m: int) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)][:m]
    return Graph.from_edges(n, edges)
