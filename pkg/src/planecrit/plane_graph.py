"""Plane graphs as rotation systems, faces by facial-walk traversal.

A plane graph is stored as a rotation system: for every vertex, the cyclic
(clockwise) order of its neighbors.  Faces fall out of next-dart traversal,
so face degrees, vertex/face incidences and face adjacencies are all exact
combinatorial quantities -- no geometry anywhere.

Vertex ids stay stable under deletion (no renumbering); emitters compact.
PlaneGraph values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

Dart = tuple[int, int]
Edge = tuple[int, int]


class PlaneGraphError(ValueError):
    """Base for rotation-system validation failures."""


class LoopEdge(PlaneGraphError):
    pass


class ParallelEdge(PlaneGraphError):
    pass


class AsymmetricRotation(PlaneGraphError):
    pass


class Disconnected(PlaneGraphError):
    pass


class MissingElement(PlaneGraphError):
    pass


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Face:
    """One face: its id and the cyclic dart sequence bounding it."""

    id: int
    walk: tuple[Dart, ...]

    @property
    def degree(self) -> int:
        return len(self.walk)

    def vertices(self) -> tuple[int, ...]:
        """Vertices along the facial walk, with multiplicity."""
        return tuple(u for u, _ in self.walk)

    def edges(self) -> tuple[Edge, ...]:
        """Edges along the facial walk, with multiplicity (bridges repeat)."""
        return tuple(edge_key(u, v) for u, v in self.walk)


class PlaneGraph:
    """Simple plane graph given by a rotation system.

    ``rotations`` maps each present vertex to the cyclic tuple of its
    neighbors.  Treat instances as immutable; every operation returns a
    new graph.
    """

    def __init__(self, rotations: Mapping[int, tuple[int, ...]], _validated: bool = False):
        self._rot = {v: tuple(nbrs) for v, nbrs in rotations.items()}
        if not _validated:
            self._validate()
        self._faces: tuple[Face, ...] | None = None
        self._face_of: dict[Dart, Face] | None = None

    def _validate(self) -> None:
        rot = self._rot
        for v, nbrs in rot.items():
            if v in nbrs:
                raise LoopEdge(f"vertex {v} lists itself as a neighbor")
            seen: set[int] = set()
            for u in nbrs:
                if u in seen:
                    raise ParallelEdge(f"vertex {v} lists neighbor {u} twice")
                seen.add(u)
                if u not in rot:
                    raise AsymmetricRotation(
                        f"vertex {v} lists {u}, but {u} has no rotation")
            for u in nbrs:
                if v not in rot[u]:
                    raise AsymmetricRotation(
                        f"vertex {v} lists {u}, but {u} does not list {v}")

    # -- basic queries -------------------------------------------------

    @property
    def rotations(self) -> dict[int, tuple[int, ...]]:
        return dict(self._rot)

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._rot))

    @property
    def n(self) -> int:
        return len(self._rot)

    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted({edge_key(u, v) for u, nbrs in self._rot.items() for v in nbrs}))

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self._rot.values()) // 2

    def darts(self) -> tuple[Dart, ...]:
        return tuple((u, v) for u, nbrs in sorted(self._rot.items()) for v in nbrs)

    def degree(self, v: int) -> int:
        try:
            return len(self._rot[v])
        except KeyError:
            raise MissingElement(f"vertex {v} not in graph") from None

    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self._rot.values()), default=0)

    def has_vertex(self, v: int) -> bool:
        return v in self._rot

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._rot and v in self._rot[u]

    def is_connected(self) -> bool:
        if not self._rot:
            return True
        start = next(iter(self._rot))
        seen = {start}
        stack = [start]
        while stack:
            for w in self._rot[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self._rot)

    # -- faces ---------------------------------------------------------

    def faces(self) -> tuple[Face, ...]:
        """All faces, from next-dart traversal of the rotation system.

        Every dart lies on exactly one facial walk; the successor of dart
        (u, v) is (v, w) with w following u in the rotation at v.
        """
        if self._faces is None:
            self._trace_faces()
        assert self._faces is not None
        return self._faces

    def _trace_faces(self) -> None:
        rot = self._rot
        index = {(u, v): i for u, nbrs in rot.items() for i, v in enumerate(nbrs)}
        pending = set(index)
        faces: list[Face] = []
        face_of: dict[Dart, Face] = {}
        while pending:
            start = min(pending)
            walk: list[Dart] = []
            dart = start
            while True:
                walk.append(dart)
                pending.discard(dart)
                u, v = dart
                nbrs = rot[v]
                dart = (v, nbrs[(index[(v, u)] + 1) % len(nbrs)])
                if dart == start:
                    break
            face = Face(id=len(faces), walk=tuple(walk))
            faces.append(face)
            for d in walk:
                face_of[d] = face
        self._faces = tuple(faces)
        self._face_of = face_of

    def face_of(self, dart: Dart) -> Face:
        self.faces()
        assert self._face_of is not None
        try:
            return self._face_of[dart]
        except KeyError:
            raise MissingElement(f"dart {dart} not in graph") from None

    def euler_characteristic(self) -> int:
        """|V| - |E| + |F|; equals 2 for every valid connected plane graph."""
        if not self.is_connected():
            raise Disconnected("Euler characteristic requires a connected graph")
        # An edgeless single vertex still sees the one unbounded face.
        nfaces = len(self.faces()) if self.m > 0 else 1
        return self.n - self.m + nfaces

    def incident_3face_count(self, v: int) -> int:
        """Vertex-face incidences of v with 3-faces, with multiplicity."""
        if v not in self._rot:
            raise MissingElement(f"vertex {v} not in graph")
        count = 0
        for face in self.faces():
            if face.degree == 3:
                count += sum(1 for u in face.vertices() if u == v)
        return count

    def adjacent_face_degrees(self, face: Face) -> tuple[int, ...]:
        """Degrees of faces across each edge of ``face`` (a multiset, sorted).

        One entry per dart of the walk whose reverse lies in a different
        face; an edge with both sides on ``face`` contributes nothing.
        """
        out = []
        for u, v in face.walk:
            other = self.face_of((v, u))
            if other.id != face.id:
                out.append(other.degree)
        return tuple(sorted(out))

    # -- modification --------------------------------------------------

    def delete_vertex(self, v: int) -> "PlaneGraph":
        if v not in self._rot:
            raise MissingElement(f"vertex {v} not in graph")
        rot = {u: tuple(w for w in nbrs if w != v)
               for u, nbrs in self._rot.items() if u != v}
        return PlaneGraph(rot, _validated=True)

    def delete_edge(self, u: int, v: int) -> "PlaneGraph":
        if not self.has_edge(u, v):
            raise MissingElement(f"edge {edge_key(u, v)} not in graph")
        rot = dict(self._rot)
        rot[u] = tuple(w for w in rot[u] if w != v)
        rot[v] = tuple(w for w in rot[v] if w != u)
        return PlaneGraph(rot, _validated=True)

    # -- misc ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneGraph) and self._rot == other._rot

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.m})"


def from_rotations(n: int, rotations: Iterable[Iterable[int]]) -> PlaneGraph:
    """Build a validated PlaneGraph from 0-based per-vertex neighbor lists."""
    rots = [tuple(r) for r in rotations]
    if len(rots) != n:
        raise PlaneGraphError(f"expected {n} rotations, got {len(rots)}")
    for v, nbrs in enumerate(rots):
        for u in nbrs:
            if not 0 <= u < n:
                raise PlaneGraphError(f"vertex {v} lists out-of-range neighbor {u}")
    return PlaneGraph({v: nbrs for v, nbrs in enumerate(rots)})
