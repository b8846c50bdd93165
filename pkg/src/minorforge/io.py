"""graph6 and JSON (de)serialisation.

graph6 follows the standard format: optional ``>>graph6<<`` header, the
vertex count ``N(n)``, then the upper triangle of the adjacency matrix taken
column by column (``x(0,1), x(0,2), x(1,2), x(0,3), ...``), packed six bits
per byte, big-endian, each byte offset by 63.
"""
from __future__ import annotations

import json
from typing import Iterable, Iterator

from .graph import Graph, build_graph

HEADER = ">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph too large for graph6")


def _decode_n(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise ValueError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) > 1 and data[1] == 126:
        chunk, rest = data[2:8], data[8:]
    else:
        chunk, rest = data[1:4], data[4:]
    n = 0
    for c in chunk:
        n = (n << 6) | (c - 63)
    return n, rest


def to_graph6(g: Graph, header: bool = False) -> str:
    out = bytearray(_encode_n(g.n))
    acc = nbits = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    text = out.decode("ascii")
    return HEADER + text if header else text


def from_graph6(text: str) -> Graph:
    text = text.strip()
    if text.startswith(HEADER):
        text = text[len(HEADER):]
    data = text.encode("ascii")
    if any(c < 63 or c > 126 for c in data):
        raise ValueError("invalid graph6 character")
    n, body = _decode_n(data)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {need}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()], "label": g.label}


def graph_from_dict(d: dict) -> Graph:
    return build_graph(int(d["n"]), [tuple(e) for e in d.get("edges", [])], d.get("label", ""))


def graph_to_json(g: Graph) -> str:
    return dumps(graph_to_dict(g))


def graph_from_json(text: str) -> Graph:
    return graph_from_dict(json.loads(text))


def load_graph(path_or_text: str) -> Graph:
    """Load a graph from a graph6 or JSON file path, or ``-`` for stdin."""
    import sys

    if path_or_text == "-":
        raw = sys.stdin.read()
    else:
        with open(path_or_text) as fh:
            raw = fh.read()
    raw = raw.strip()
    if raw.startswith("{"):
        return graph_from_json(raw)
    return from_graph6(raw.splitlines()[0])


def dumps(obj) -> str:
    """Stable JSON: sorted keys, no timestamps, ``Fraction`` as ``"p/q"``."""
    return json.dumps(obj, sort_keys=True, default=_default)


def _default(obj):
    from fractions import Fraction

    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, Graph):
        return graph_to_dict(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")
