import random
import sys
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # polyhedra / oracles helpers

from planecrit.io_formats import emit_planar_code, parse_planar_code

from oracles import nx_plane_graph

FIXTURES = Path(__file__).parent.parent / "fixtures"

CORPUS_SEED = 20260823
CORPUS_SIZE = 10_000


def _random_planar_corpus() -> bytes:
    """Deterministic planar_code corpus: connected plane graphs, n <= 10.

    Stand-in for an external-generator corpus; embeddings come from an
    independent planarity library, so the corpus also acts as an oracle
    for the facial-walk code.
    """
    rng = random.Random(CORPUS_SEED)
    graphs = []
    while len(graphs) < CORPUS_SIZE:
        n = rng.randint(3, 10)
        p = rng.uniform(0.25, 0.9) if n <= 6 else rng.uniform(1.5 / n, 4.0 / n)
        G = nx.gnp_random_graph(n, p, seed=rng.randrange(2 ** 32))
        if not nx.is_connected(G):
            continue
        pg = nx_plane_graph(G)
        if pg is None:
            continue
        graphs.append(pg)
    return emit_planar_code(graphs)


@pytest.fixture(scope="session")
def planar_corpus_bytes(tmp_path_factory) -> bytes:
    path = tmp_path_factory.getbasetemp() / "corpus_n10.pc"
    if not path.exists():
        path.write_bytes(_random_planar_corpus())
    return path.read_bytes()


@pytest.fixture(scope="session")
def planar_corpus(planar_corpus_bytes):
    return parse_planar_code(planar_corpus_bytes)


@pytest.fixture(scope="session")
def atlas_graphs():
    """Every simple graph on 1..7 vertices (one per isomorphism class)."""
    out = []
    for G in nx.graph_atlas_g()[1:]:
        out.append((G.number_of_nodes(),
                    sorted(tuple(sorted(e)) for e in G.edges())))
    return out


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES
