"""Canonical forms for small graphs.

Colour refinement followed by individualisation over the first non-singleton
cell; every branch is explored, except that vertices which are twins of an
already-tried vertex are skipped (swapping twins is an automorphism that fixes
every individualised vertex). The certificate is the lexicographically largest
relabelled adjacency tuple over all leaves.
"""
from __future__ import annotations

from functools import lru_cache

from .graph import Graph, bits


def _refine(g: Graph, colours: list) -> list:
    n = g.n
    ncol = len(set(colours))
    while True:
        keys = [
            (colours[v], tuple(sorted(colours[w] for w in bits(g.adj[v]))))
            for v in range(n)
        ]
        ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
        colours = [ranks[k] for k in keys]
        if len(ranks) == ncol:
            return colours
        ncol = len(ranks)


def _certificate(g: Graph, colours: list) -> tuple:
    out = [0] * g.n
    for v in range(g.n):
        a = 0
        for w in bits(g.adj[v]):
            a |= 1 << colours[w]
        out[colours[v]] = a
    return tuple(out)


def _search(g: Graph, colours: list, best: list) -> None:
    if len(set(colours)) == g.n:
        cert = _certificate(g, colours)
        if best[0] is None or cert > best[0]:
            best[0] = cert
        return
    counts = {}
    for c in colours:
        counts[c] = counts.get(c, 0) + 1
    target = min(c for c, k in counts.items() if k > 1)
    cell = [v for v in range(g.n) if colours[v] == target]
    tried = []
    for v in cell:
        if any((g.adj[v] & ~(1 << u)) == (g.adj[u] & ~(1 << v)) for u in tried):
            continue
        tried.append(v)
        keys = [(colours[u], 0 if u == v else 1) for u in range(g.n)]
        ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
        _search(g, _refine(g, [ranks[k] for k in keys]), best)


@lru_cache(maxsize=1 << 16)
def canonical_form(g: Graph) -> tuple:
    """Isomorphism-invariant certificate ``(n, adjacency masks)``."""
    if g.n == 0:
        return (0, ())
    best = [None]
    _search(g, _refine(g, [0] * g.n), best)
    return (g.n, best[0])


def canonical_graph(g: Graph) -> Graph:
    n, adj = canonical_form(g)
    return Graph(n, adj, g.label)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.e != b.e or sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return canonical_form(a) == canonical_form(b)
