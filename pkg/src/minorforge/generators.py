"""Standard graph families and seeded random generators."""
from __future__ import annotations

import random
from collections import deque
from typing import Sequence

from .config import get_config
from .errors import InfeasibleParameters
from .graph import Graph, bits, build_graph, girth


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n, f"O{n}" if n else "O")


def complete(t: int) -> Graph:
    full = (1 << t) - 1
    return Graph(t, tuple(full & ~(1 << v) for v in range(t)), f"K{t}")


def complete_multipartite(parts: Sequence[int]) -> Graph:
    n = sum(parts)
    full = (1 << n) - 1
    adj = []
    start = 0
    for size in parts:
        block = ((1 << size) - 1) << start
        adj.extend([full & ~block] * size)
        start += size
    return Graph(n, tuple(adj), "K" + ",".join(map(str, parts)))


def complete_bipartite(s: int, t: int) -> Graph:
    return complete_multipartite([s, t])


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise InfeasibleParameters("cycles need at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def star(leaves: int) -> Graph:
    return complete_bipartite(1, leaves)


def grid(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(rows * cols, edges, f"grid{rows}x{cols}")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner, "Petersen")


def friendship(k: int) -> Graph:
    """``k`` triangles sharing one vertex (vertex 0)."""
    edges = []
    for i in range(k):
        a, b = 2 * i + 1, 2 * i + 2
        edges += [(0, a), (0, b), (a, b)]
    return build_graph(2 * k + 1, edges, f"F{k}")


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    adj = []
    offset = 0
    for g in graphs:
        adj.extend(a << offset for a in g.adj)
        offset += g.n
    return Graph(offset, tuple(adj), "+".join(g.label for g in graphs if g.label))


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full & ~a & ~(1 << v) for v, a in enumerate(g.adj)), f"co-{g.label}" if g.label else "")


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return build_graph(n, edges, f"G({n},{p})")


def random_graph_corpus(count: int, n_range=(1, 12), seed: int = 0) -> list:
    """Seeded mix of G(n, p) graphs with varied edge probability."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(*n_range)
        p = rng.choice([0.2, 0.35, 0.5, 0.65, 0.8])
        out.append(gnp(n, p, seed=rng.randrange(1 << 30)).with_label(f"corpus{i}"))
    return out


def _bfs_within(adj, src, limit):
    """Vertices at distance < ``limit`` from ``src``."""
    seen = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if seen[x] + 1 >= limit:
            continue
        for y in bits(adj[x]):
            if y not in seen:
                seen[y] = seen[x] + 1
                queue.append(y)
    return seen


def moore_bound(d: int, gamma: int) -> int:
    """Least order of a ``d``-regular graph with girth at least ``gamma``."""
    if gamma <= 2:
        return d + 1
    r, odd = divmod(gamma, 2)
    if odd:
        return 1 + d * sum((d - 1) ** i for i in range(r))
    return 2 * sum((d - 1) ** i for i in range(r))


def regular_high_girth(d: int, g: int, n: int, seed: int = 0, retries: int | None = None) -> Graph:
    """A ``d``-regular graph on ``n`` vertices with girth strictly greater than ``g``.

    Random greedy pairing: an edge ``uv`` is only added when ``u`` and ``v``
    are at distance at least ``g`` (so no cycle of length ``<= g`` appears).
    A stuck attempt restarts; deterministic for a fixed seed.
    """
    if retries is None:
        retries = get_config().girth_retries
    if d < 0 or n < 0 or (n * d) % 2 or (n > 0 and d >= n):
        raise InfeasibleParameters(f"no {d}-regular graph on {n} vertices")
    if d == 0:
        return Graph(n, (0,) * n, f"reg{d}g{g}")
    if d >= 2 and n < moore_bound(d, g + 1):
        raise InfeasibleParameters(f"{n} vertices is below the Moore bound for degree {d}, girth {g + 1}")
    rng = random.Random(seed)
    for _ in range(retries):
        adj = [0] * n
        deg = [0] * n
        ok = True
        while True:
            open_ = [v for v in range(n) if deg[v] < d]
            if not open_:
                break
            # lowest current degree first
            lo = min(deg[v] for v in open_)
            u = rng.choice([v for v in open_ if deg[v] == lo])
            near = _bfs_within(adj, u, g)
            cands = [v for v in open_ if v != u and v not in near]
            if not cands:
                ok = False
                break
            v = rng.choice(cands)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            deg[u] += 1
            deg[v] += 1
        if not ok:
            continue
        out = Graph(n, tuple(adj), f"reg{d}g>{g}n{n}")
        gg = girth(out)
        if all(x == d for x in deg) and (gg is None or gg > g):
            return out
    raise InfeasibleParameters(f"no {d}-regular graph of girth > {g} on {n} vertices found in {retries} attempts")
