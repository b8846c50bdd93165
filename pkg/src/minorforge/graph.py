"""Simple undirected graphs over dense integer vertex ids.

Adjacency is stored as one Python ``int`` bitmask per vertex, so vertex sets
are bitmasks too: membership is a shift-and-mask, iteration is ascending.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .errors import NotAnEdge, OutOfRange, SelfLoop


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Equality and hashing ignore the label.
    """

    n: int
    adj: tuple
    label: str = field(default="", compare=False)

    @property
    def e(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list:
        return [a.bit_count() for a in self.adj]

    def neighbors(self, v: int) -> list:
        return list(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list:
        out = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def min_degree(self) -> int:
        return min((a.bit_count() for a in self.adj), default=0)

    def max_degree(self) -> int:
        return max((a.bit_count() for a in self.adj), default=0)

    def neighborhood(self, mask: int) -> int:
        """Vertices adjacent to some vertex of ``mask`` and not in it."""
        out = 0
        for v in bits(mask):
            out |= self.adj[v]
        return out & ~mask

    def with_label(self, label: str) -> "Graph":
        return Graph(self.n, self.adj, label)

    def __repr__(self) -> str:
        tag = f" {self.label!r}" if self.label else ""
        return f"<Graph{tag} n={self.n} e={self.e}>"


def build_graph(n: int, edges: Iterable[Sequence[int]], label: str = "") -> Graph:
    """Build a graph from an edge list; repeated edges are merged."""
    if n < 0:
        raise OutOfRange(f"negative vertex count {n}")
    adj = [0] * n
    for edge in edges:
        u, v = edge
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), label)


def from_adjacency(adj: Sequence[int], label: str = "") -> Graph:
    """Wrap a symmetric, loop-free list of bitmasks (checked)."""
    n = len(adj)
    full = (1 << n) - 1
    for u, a in enumerate(adj):
        if a & ~full:
            raise OutOfRange(f"neighbour of {u} outside 0..{n - 1}")
        if a >> u & 1:
            raise SelfLoop(f"self-loop at {u}")
        for v in bits(a):
            if not adj[v] >> u & 1:
                raise ValueError(f"asymmetric adjacency between {u} and {v}")
    return Graph(n, tuple(adj), label)


def _check_vertices(g: Graph, vertices) -> int:
    m = 0
    for v in vertices:
        if not 0 <= v < g.n:
            raise OutOfRange(f"vertex {v} outside 0..{g.n - 1}")
        m |= 1 << v
    return m


def induced_mask(g: Graph, mask: int) -> tuple[Graph, list]:
    """Induced subgraph on a bitmask; returns ``(graph, old_ids)``."""
    old = list(bits(mask))
    pos = {v: i for i, v in enumerate(old)}
    adj = []
    for v in old:
        a = 0
        for w in bits(g.adj[v] & mask):
            a |= 1 << pos[w]
        adj.append(a)
    return Graph(len(old), tuple(adj)), old


def subgraph_induced(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list]:
    """``G[S]`` relabelled to ``0..|S|-1``; the second item maps new id -> old id."""
    return induced_mask(g, _check_vertices(g, vertices))


def delete_vertices(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list]:
    """``G - S``; same return shape as :func:`subgraph_induced`."""
    drop = _check_vertices(g, vertices)
    return induced_mask(g, g.vertex_mask & ~drop)


def contract_edge(g: Graph, u: int, v: int) -> tuple[Graph, dict]:
    """Contract ``uv`` into a single vertex, dropping loops and parallel edges.

    The merged vertex keeps id ``min(u, v)``; ids above ``max(u, v)`` shift
    down by one. Returns the graph and the old-id -> new-id map.
    """
    _check_vertices(g, (u, v))
    if not g.has_edge(u, v):
        raise NotAnEdge(f"({u}, {v}) is not an edge")
    keep, gone = min(u, v), max(u, v)
    idmap = {}
    for x in range(g.n):
        if x == gone:
            idmap[x] = keep
        else:
            idmap[x] = x - 1 if x > gone else x
    merged = (g.adj[keep] | g.adj[gone]) & ~((1 << keep) | (1 << gone))
    adj = []
    for x in range(g.n):
        if x == gone:
            continue
        a = merged if x == keep else g.adj[x]
        if x != keep and a >> gone & 1:
            a = (a & ~(1 << gone)) | (1 << keep)
        adj.append(_drop_bit(a, gone))
    return Graph(g.n - 1, tuple(adj)), idmap


def _drop_bit(mask: int, i: int) -> int:
    low = mask & ((1 << i) - 1)
    return low | ((mask >> (i + 1)) << i)


def component_masks(g: Graph, within: Optional[int] = None) -> list:
    """Connected components of ``G[within]`` as bitmasks, ordered by least vertex."""
    rest = g.vertex_mask if within is None else within
    comps = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected_mask(g: Graph, mask: int) -> bool:
    if not mask:
        return False
    seed = mask & -mask
    comp = frontier = seed
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= mask & ~comp
        comp |= nxt
        frontier = nxt
    return comp == mask


def is_connected(g: Graph) -> bool:
    return g.n == 0 or is_connected_mask(g, g.vertex_mask)


def two_colouring(g: Graph) -> Optional[list]:
    """Return a proper 2-colouring (0/1 per vertex) or ``None``."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in bits(g.adj[x]):
                if colour[y] < 0:
                    colour[y] = 1 - colour[x]
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return None
    return colour


def is_bipartite(g: Graph) -> bool:
    return two_colouring(g) is not None


def degeneracy(g: Graph) -> int:
    """Max over subgraphs of the minimum degree, by repeated min-degree removal."""
    deg = g.degrees()
    alive = g.vertex_mask
    best = 0
    for _ in range(g.n):
        v = min(bits(alive), key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        alive &= ~(1 << v)
        for w in bits(g.adj[v] & alive):
            deg[w] -= 1
    return best


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, ``None`` for forests (BFS from every vertex)."""
    best = None
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if best is not None and 2 * dist[x] + 1 >= best:
                break
            for y in bits(g.adj[x]):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    cyc = dist[x] + dist[y] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


def density(g: Graph) -> Optional[Fraction]:
    """``e/v`` as an exact fraction; ``None`` for the null graph."""
    return Fraction(g.e, g.n) if g.n else None


@dataclass(frozen=True)
class GraphStats:
    v: int
    e: int
    min_degree: int
    max_degree: int
    density: Optional[Fraction]
    degeneracy: int
    is_bipartite: bool
    max_component_size: int


def stats(g: Graph) -> GraphStats:
    return GraphStats(
        v=g.n,
        e=g.e,
        min_degree=g.min_degree(),
        max_degree=g.max_degree(),
        density=density(g),
        degeneracy=degeneracy(g),
        is_bipartite=is_bipartite(g),
        max_component_size=max((c.bit_count() for c in component_masks(g)), default=0),
    )


def is_homomorphism(h: Graph, g: Graph, phi) -> bool:
    """Check that ``phi`` (dict or sequence) is an injective edge-preserving map."""
    if isinstance(phi, dict):
        items = phi
    else:
        items = dict(enumerate(phi))
    if set(items) != set(range(h.n)):
        return False
    images = list(items.values())
    if len(set(images)) != len(images) or not all(0 <= x < g.n for x in images):
        return False
    return all(g.has_edge(items[u], items[v]) for u, v in h.edges())
