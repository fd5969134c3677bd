"""Corpus I/O: graph6 (abstract graphs), planar_code (embedded graphs,
plantri-compatible) and a JSON rotation format for hand-built fixtures.

graph6 carries no embedding, so graph6 input only ever produces abstract
Graph values; embeddings are never invented.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Union

from .graph import Graph
from .plane_graph import PlaneGraph, PlaneGraphError, from_rotations

PLANAR_CODE_HEADER = b">>planar_code<<"
GRAPH6_HEADER = b">>graph6<<"

AnyGraph = Union[Graph, PlaneGraph]


class FormatError(ValueError):
    """Base for corpus decoding failures."""


class BadHeader(FormatError):
    pass


class TruncatedBits(FormatError):
    pass


class NonCanonicalPadding(FormatError):
    pass


class UnsupportedWideEncoding(FormatError):
    pass


class DanglingRecord(FormatError):
    pass


class SchemaViolation(FormatError):
    pass


# -- graph6 --------------------------------------------------------------


def parse_graph6(record: bytes | str) -> Graph:
    """Decode one graph6 record into an abstract simple graph."""
    if isinstance(record, str):
        record = record.encode("ascii", errors="replace")
    data = record.strip()
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
    if not data:
        raise BadHeader("empty graph6 record")
    if any(b < 63 or b > 126 for b in data):
        raise BadHeader("graph6 record contains bytes outside 63..126")
    # size prefix
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            if len(data) < 8:
                raise BadHeader("truncated 8-byte graph6 size prefix")
            n = _unbase(data[2:8])
            body = data[8:]
        else:
            if len(data) < 4:
                raise BadHeader("truncated 4-byte graph6 size prefix")
            n = _unbase(data[1:4])
            body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(body) < nbytes:
        raise TruncatedBits(f"need {nbytes} body bytes for n={n}, got {len(body)}")
    if len(body) > nbytes:
        raise NonCanonicalPadding(f"{len(body) - nbytes} extra bytes after bit field")
    bits = 0
    for b in body:
        bits = (bits << 6) | (b - 63)
    total = 6 * nbytes
    if nbytes and bits & ((1 << (total - nbits)) - 1):
        raise NonCanonicalPadding("padding bits are not zero")
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits >> (total - 1 - idx) & 1:
                edges.append((u, v))
            idx += 1
    return Graph.from_edges(n, edges)


def emit_graph6(g: Graph) -> bytes:
    """Encode an abstract graph as one graph6 record (dense ids required)."""
    verts = sorted(g.vertices)
    if verts != list(range(len(verts))):
        raise ValueError("graph6 export needs dense 0-based vertex ids")
    n = len(verts)
    if n <= 62:
        prefix = bytes([n + 63])
    elif n <= 258047:
        prefix = bytes([126]) + _base(n, 3)
    else:
        prefix = bytes([126, 126]) + _base(n, 6)
    bits = []
    for v in range(1, n):
        for u in range(v):
            bits.append(1 if (u, v) in g.edges else 0)
    while len(bits) % 6:
        bits.append(0)
    body = bytes(63 + int("".join(map(str, bits[i:i + 6])), 2)
                 for i in range(0, len(bits), 6))
    return prefix + body


def _unbase(chunk: bytes) -> int:
    val = 0
    for b in chunk:
        val = (val << 6) | (b - 63)
    return val


def _base(n: int, width: int) -> bytes:
    out = []
    for i in reversed(range(width)):
        out.append(63 + ((n >> (6 * i)) & 63))
    return bytes(out)


# -- planar_code ---------------------------------------------------------


def parse_planar_code(stream: bytes) -> list[PlaneGraph]:
    """Decode a planar_code byte stream into embedded plane graphs.

    Only the 1-byte size form is supported (n < 255); rotations arrive in
    plantri's clockwise order and are taken as given.
    """
    return list(iter_planar_code(stream))


def iter_planar_code(stream: bytes) -> Iterator[PlaneGraph]:
    if not stream.startswith(PLANAR_CODE_HEADER):
        raise BadHeader("stream does not start with >>planar_code<<")
    pos = len(PLANAR_CODE_HEADER)
    record = 0
    while pos < len(stream):
        n = stream[pos]
        pos += 1
        if n == 0:
            raise UnsupportedWideEncoding(
                f"record {record}: multi-byte size form not supported")
        rotations: list[list[int]] = []
        for v in range(n):
            nbrs: list[int] = []
            while True:
                if pos >= len(stream):
                    raise DanglingRecord(
                        f"record {record}: stream ends inside rotation of vertex {v}")
                b = stream[pos]
                pos += 1
                if b == 0:
                    break
                nbrs.append(b - 1)  # file is 1-based
            rotations.append(nbrs)
        try:
            yield from_rotations(n, rotations)
        except PlaneGraphError as exc:
            raise FormatError(f"record {record}: {exc}") from exc
        record += 1


def emit_planar_code(graphs: list[PlaneGraph] | tuple[PlaneGraph, ...]) -> bytes:
    """Encode plane graphs as a planar_code stream (1-byte size form)."""
    out = bytearray(PLANAR_CODE_HEADER)
    for g in graphs:
        verts = sorted(g.rotations)
        if len(verts) >= 255:
            raise UnsupportedWideEncoding("n >= 255 not representable")
        relabel = {v: i + 1 for i, v in enumerate(verts)}
        out.append(len(verts))
        rot = g.rotations
        for v in verts:
            out.extend(relabel[w] for w in rot[v])
            out.append(0)
    return bytes(out)


# -- JSON rotations ------------------------------------------------------


def parse_json_rotations(text: str) -> PlaneGraph:
    """Decode a {"n": ..., "rotations": [...]} fixture into a PlaneGraph."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaViolation("top level must be an object")
    missing = {"n", "rotations"} - set(obj)
    if missing:
        raise SchemaViolation(f"missing keys: {sorted(missing)}")
    n, rotations = obj["n"], obj["rotations"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise SchemaViolation("'n' must be a nonnegative integer")
    if (not isinstance(rotations, list)
            or any(not isinstance(r, list) for r in rotations)
            or any(not isinstance(x, int) or isinstance(x, bool)
                   for r in rotations for x in r)):
        raise SchemaViolation("'rotations' must be a list of integer lists")
    return from_rotations(n, rotations)


def emit_json_rotations(g: PlaneGraph) -> str:
    """Canonical JSON for a PlaneGraph; ids compacted to 0..n-1."""
    verts = sorted(g.rotations)
    relabel = {v: i for i, v in enumerate(verts)}
    rot = g.rotations
    rotations = [[relabel[w] for w in rot[v]] for v in verts]
    return json.dumps({"n": len(verts), "rotations": rotations},
                      separators=(",", ":"), sort_keys=True)


# -- corpus streaming ----------------------------------------------------


@dataclass
class CorpusRecord:
    index: int
    graph: AnyGraph


def sniff_format(data: bytes) -> str:
    if data.startswith(PLANAR_CODE_HEADER):
        return "planar_code"
    head = data.lstrip()[:1]
    if head in (b"{", b"["):
        return "json"
    return "graph6"


def read_corpus(data: bytes, fmt: str = "auto") -> Iterator[CorpusRecord]:
    """Decode a corpus; graph6 yields abstract Graphs, the embedded formats
    yield PlaneGraphs.  Malformed records abort with their position."""
    if fmt == "auto":
        fmt = sniff_format(data)
    if fmt == "planar_code":
        for i, g in enumerate(iter_planar_code(data)):
            yield CorpusRecord(i, g)
    elif fmt == "graph6":
        index = 0
        for lineno, line in enumerate(data.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                yield CorpusRecord(index, parse_graph6(line))
            except FormatError as exc:
                raise type(exc)(f"line {lineno}: {exc}") from exc
            index += 1
    elif fmt == "json":
        text = data.decode("utf-8")
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"invalid JSON: {exc}") from exc
        items = obj if isinstance(obj, list) else [obj]
        for i, item in enumerate(items):
            yield CorpusRecord(i, parse_json_rotations(json.dumps(item)))
    else:
        raise ValueError(f"unknown format {fmt!r}")
