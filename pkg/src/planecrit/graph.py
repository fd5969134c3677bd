"""Abstract simple graphs (no embedding) for the coloring machinery."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

from .plane_graph import edge_key

if TYPE_CHECKING:
    from .plane_graph import PlaneGraph

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Vertex set plus undirected edge set; vertex ids need not be dense."""

    vertices: frozenset[int]
    edges: frozenset[Edge]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u > v:
                raise ValueError(f"edge {(u, v)} not normalized")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge {(u, v)} leaves vertex set")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        es = frozenset(edge_key(u, v) for u, v in edges)
        for u, v in es:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
        return cls(frozenset(range(n)), es)

    @classmethod
    def from_plane(cls, g: "PlaneGraph") -> "Graph":
        return cls(frozenset(g.vertices()), frozenset(g.edges()))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees().values(), default=0)

    def delete_edge(self, u: int, v: int) -> "Graph":
        e = edge_key(u, v)
        if e not in self.edges:
            raise ValueError(f"edge {e} not in graph")
        return Graph(self.vertices, self.edges - {e})

    def drop_isolated(self) -> "Graph":
        live = {u for e in self.edges for u in e}
        return Graph(frozenset(live), self.edges)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = self.adjacency()
        start = next(iter(self.vertices))
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)
