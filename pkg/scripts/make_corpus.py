#!/usr/bin/env python3
"""Generate a deterministic corpus of small connected plane graphs.

Embeddings come from networkx's planarity checker, so the output doubles
as an independent oracle for the facial-walk code.  Default parameters
reproduce the corpus used by the acceptance suite.
"""

import argparse
import random
import sys

import networkx as nx

from planecrit.io_formats import emit_graph6, emit_planar_code
from planecrit.graph import Graph
from planecrit.plane_graph import from_rotations


def plane_from_nx(G):
    ok, emb = nx.check_planarity(G)
    if not ok:
        return None
    rotations = [list(emb.get_data()[v]) for v in sorted(G.nodes())]
    return from_rotations(G.number_of_nodes(), rotations)


def generate(count, max_n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, max_n)
        p = rng.uniform(0.25, 0.9) if n <= 6 else rng.uniform(1.5 / n, 4.0 / n)
        G = nx.gnp_random_graph(n, p, seed=rng.randrange(2 ** 32))
        if not nx.is_connected(G):
            continue
        pg = plane_from_nx(G)
        if pg is None:
            continue
        out.append(pg)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=10_000)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--seed", type=int, default=20260823)
    ap.add_argument("--format", choices=["planar_code", "graph6"],
                    default="planar_code")
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    graphs = generate(args.count, args.max_n, args.seed)
    if args.format == "planar_code":
        data = emit_planar_code(graphs)
    else:
        data = b"".join(emit_graph6(Graph.from_plane(g)) + b"\n"
                        for g in graphs)
    if args.out == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(args.out, "wb") as fh:
            fh.write(data)
        print(f"wrote {len(graphs)} graphs to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
