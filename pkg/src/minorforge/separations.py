"""Separations, dense pairs, vertex connectivity and disjoint path systems.

Separations of order at most ``k`` are found by enumerating candidate
separators ``S`` (``|S| <= k``) and grouping the components of ``G - S``.
Flow-based routines use unit-capacity split vertices.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .errors import BudgetExceeded, XNotProper
from .graph import Graph, bits, component_masks, mask_of

__all__ = [
    "DenseCheck",
    "MengerResult",
    "Separation",
    "balanced_separator",
    "connectivity",
    "extract_dense_pair",
    "is_dense_pair",
    "local_connectivity",
    "menger_paths",
    "min_vertex_cut",
]

SUBSET_BUDGET = 2_000_000


@dataclass(frozen=True)
class Separation:
    A: frozenset
    B: frozenset

    @property
    def order(self) -> int:
        return len(self.A & self.B)

    @property
    def separator(self) -> frozenset:
        return self.A & self.B

    def violations(self, g: Graph, proper: bool = True) -> list:
        """Broken invariants (empty list when valid)."""
        out = []
        if self.A | self.B != frozenset(range(g.n)):
            out.append("A and B do not cover V(G)")
        if proper and (not self.A - self.B or not self.B - self.A):
            out.append("one side is contained in the other")
        if g.neighborhood(mask_of(self.A - self.B)) & mask_of(self.B - self.A):
            out.append("an edge joins A-B to B-A")
        return out

    def is_valid(self, g: Graph, proper: bool = True) -> bool:
        return not self.violations(g, proper)

    def to_dict(self) -> dict:
        return {"A": sorted(self.A), "B": sorted(self.B), "order": self.order}

    @classmethod
    def from_dict(cls, d: dict) -> "Separation":
        return cls(frozenset(d["A"]), frozenset(d["B"]))


def _sep(g: Graph, a_mask: int, b_mask: int) -> Separation:
    return Separation(frozenset(bits(a_mask)), frozenset(bits(b_mask)))


def _separators(g: Graph, max_order: int, min_order: int = 0) -> Iterator[tuple]:
    """Yield ``(S_mask, components of G - S)`` for ``|S|`` in the range, ascending."""
    n = g.n
    max_order = min(max_order, n)
    spent = 0
    full = g.vertex_mask
    for k in range(min_order, max_order + 1):
        for combo in combinations(range(n), k):
            spent += 1
            if spent > SUBSET_BUDGET:
                raise BudgetExceeded(f"separator enumeration exceeded {SUBSET_BUDGET} subsets")
            s = mask_of(combo)
            comps = component_masks(g, full & ~s)
            if len(comps) >= 2:
                yield s, comps


# ------------------------------------------------------------- dense pairs


@dataclass(frozen=True)
class DenseCheck:
    ok: bool
    low_degree_vertex: Optional[int] = None
    separation: Optional[Separation] = None

    def __bool__(self) -> bool:
        return self.ok


def is_dense_pair(g: Graph, X: Iterable[int], d: int, k: int) -> DenseCheck:
    """Exact ``(d, k)``-density check with a witness on failure.

    A violating separation exists iff some ``S`` with ``|S| <= k`` leaves at
    least two components of ``G - S`` that contain vertices outside ``X``.
    The witness is of least order, then most balanced, then lexicographic.
    """
    xm = mask_of(X)
    if xm & ~g.vertex_mask or xm == g.vertex_mask:
        raise XNotProper("X must be a proper subset of V(G)")
    for v in range(g.n):
        if not xm >> v & 1 and g.degree(v) < d:
            return DenseCheck(False, low_degree_vertex=v)
    best = None
    best_order = None
    for s, comps in _separators(g, k):
        order = s.bit_count()
        if best_order is not None and order > best_order:
            break
        heavy = [c for c in comps if c & ~xm]
        if len(heavy) < 2:
            continue
        side = _balanced_split(g, s, comps, heavy)
        key = (order, max(side[0].bit_count(), side[1].bit_count()), sorted(bits(side[0])))
        if best is None or key < best[0]:
            best = (key, side)
        best_order = order
    if best is None:
        return DenseCheck(True)
    a, b = best[1]
    return DenseCheck(False, separation=_sep(g, a, b))


def _balanced_split(g: Graph, s: int, comps: list, heavy: list) -> tuple:
    """Split with one heavy component on each side, otherwise as even as possible."""
    first, rest = heavy[0], [c for c in comps if c != heavy[0]]
    choice = _best_partition(s, [first] + rest, forced_a=0, forced_b=1)
    return choice


def _best_partition(s: int, comps: list, forced_a: Optional[int] = None, forced_b: Optional[int] = None):
    """Assign components to two non-empty sides minimising the larger side.

    Exact when there are at most 14 components, otherwise greedy by size.
    Ties go to the lexicographically least A.
    """
    k = s.bit_count()
    m = len(comps)
    best = None
    if m <= 14:
        for pick in range(1, (1 << m) - 1):
            if forced_a is not None and not pick >> forced_a & 1:
                continue
            if forced_b is not None and pick >> forced_b & 1:
                continue
            a = s
            for i in range(m):
                if pick >> i & 1:
                    a |= comps[i]
            b = s
            for i in range(m):
                if not pick >> i & 1:
                    b |= comps[i]
            key = (max(a.bit_count(), b.bit_count()), sorted(bits(a)))
            if best is None or key < best[0]:
                best = (key, (a, b))
        return best[1] if best else None
    order = sorted(range(m), key=lambda i: -comps[i].bit_count())
    a, b = s, s
    if forced_a is not None:
        a |= comps[forced_a]
    if forced_b is not None:
        b |= comps[forced_b]
    for i in order:
        if i in (forced_a, forced_b):
            continue
        if a.bit_count() <= b.bit_count():
            a |= comps[i]
        else:
            b |= comps[i]
    if a == s:
        a |= comps[order[-1]]
        b &= ~comps[order[-1]] | s
    return (a, b) if sorted(bits(a)) <= sorted(bits(b)) else (b, a)


def extract_dense_pair(g: Graph, k: int) -> tuple:
    """Return ``(G', X)`` with ``|X| <= 2k`` and ``(G', X)`` ``(delta(G), k)``-dense.

    If no separation of order below ``2k`` exists the answer is ``(G, {})``;
    otherwise take such a separation ``(A, B)`` with ``|A|`` least (ties by
    lexicographically least ``A``) and return ``(G[A], A & B)``. ``X`` is given
    in the relabelled vertex ids of ``G'``; ``G'.label`` is kept and the old
    ids are available from :func:`extract_dense_pair_with_ids`.
    """
    sub, x, _ = extract_dense_pair_with_ids(g, k)
    return sub, x


def extract_dense_pair_with_ids(g: Graph, k: int) -> tuple:
    from .graph import induced_mask

    if k <= 0:
        raise ValueError("k must be positive")
    if g.n == 0:
        raise ValueError("graph must be non-null")
    best = None
    for s, comps in _separators(g, 2 * k - 1):
        for c in comps:
            a = s | c
            key = (a.bit_count(), sorted(bits(a)))
            if best is None or key < best[0]:
                best = (key, a, s)
    if best is None:
        return g, frozenset(), list(range(g.n))
    _, a, s = best
    sub, old = induced_mask(g, a)
    pos = {v: i for i, v in enumerate(old)}
    return sub.with_label(g.label), frozenset(pos[v] for v in bits(s)), old


# ------------------------------------------------------------------ flows


class _SplitFlow:
    """Max-flow on the split-vertex digraph: ``v_in = 2v``, ``v_out = 2v+1``."""

    INF = 1 << 30

    def __init__(self, g: Graph, sources: int, sinks: int, heavy: int = 0):
        self.g = g
        n = g.n
        self.s, self.t = 2 * n, 2 * n + 1
        self.cap: dict = {}
        self.out: list = [[] for _ in range(2 * n + 2)]
        for v in range(n):
            self._arc(2 * v, 2 * v + 1, self.INF if heavy >> v & 1 else 1)
            for w in bits(g.adj[v]):
                self._arc(2 * v + 1, 2 * w, self.INF)
        for v in bits(sources):
            self._arc(self.s, 2 * v, self.INF)
        for v in bits(sinks):
            self._arc(2 * v + 1, self.t, self.INF)
        self.value = self._run()

    def _arc(self, a: int, b: int, c: int) -> None:
        if (a, b) not in self.cap:
            self.out[a].append(b)
            self.out[b].append(a)
            self.cap[(a, b)] = 0
            self.cap.setdefault((b, a), 0)
        self.cap[(a, b)] += c

    def _run(self) -> int:
        flow = 0
        while True:
            parent = {self.s: None}
            queue = deque([self.s])
            while queue and self.t not in parent:
                x = queue.popleft()
                for y in self.out[x]:
                    if y not in parent and self.cap[(x, y)] > 0:
                        parent[y] = x
                        queue.append(y)
            if self.t not in parent:
                self.reach = set(parent)
                return flow
            path = []
            y = self.t
            while parent[y] is not None:
                path.append((parent[y], y))
                y = parent[y]
            push = min(self.cap[a] for a in path)
            if push >= self.INF:
                self.reach = set()
                return self.INF
            for a, b in path:
                self.cap[(a, b)] -= push
                self.cap[(b, a)] += push
            flow += push

    def cut_sides(self) -> tuple:
        """``(A, B)`` masks of the min cut: ``A`` = vertices whose in-node is reachable."""
        a = cut = 0
        for v in range(self.g.n):
            if 2 * v in self.reach:
                a |= 1 << v
                if 2 * v + 1 not in self.reach:
                    cut |= 1 << v
        b = (self.g.vertex_mask & ~a) | cut
        return a, b

    def paths(self) -> list:
        """Decompose a unit-capacity flow into vertex sequences."""
        n = self.g.n
        out = []
        for v in range(n):
            if self.cap.get((2 * v, self.s), 0) <= 0:
                continue
            p = [v]
            while self.cap.get((self.t, 2 * p[-1] + 1), 0) <= 0:
                x = p[-1]
                p.append(next(w for w in bits(self.g.adj[x]) if self.cap[(2 * w, 2 * x + 1)] > 0))
            out.append(p)
        return out


def local_connectivity(g: Graph, u: int, w: int) -> int:
    """Maximum number of internally disjoint ``u``-``w`` paths for non-adjacent ``u, w``."""
    if g.has_edge(u, w) or u == w:
        raise ValueError("local connectivity needs distinct non-adjacent vertices")
    heavy = (1 << u) | (1 << w)
    return _SplitFlow(g, 1 << u, 1 << w, heavy).value


def min_vertex_cut(g: Graph, u: int, w: int) -> frozenset:
    heavy = (1 << u) | (1 << w)
    f = _SplitFlow(g, 1 << u, 1 << w, heavy)
    a, b = f.cut_sides()
    return frozenset(bits(a & b))


def connectivity(g: Graph) -> int:
    """Vertex connectivity; ``n - 1`` for complete graphs."""
    if g.n == 0:
        raise ValueError("connectivity of the null graph is undefined")
    n = g.n
    if g.e == n * (n - 1) // 2:
        return n - 1
    best = n - 1
    for u in range(n):
        for w in range(u + 1, n):
            if not g.has_edge(u, w):
                best = min(best, local_connectivity(g, u, w))
                if best == 0:
                    return 0
    return best


@dataclass(frozen=True)
class MengerResult:
    paths: Optional[list] = None
    separation: Optional[Separation] = None

    @property
    def found_paths(self) -> bool:
        return self.paths is not None


def menger_paths(g: Graph, U: Iterable[int], W: Iterable[int], ell: int) -> MengerResult:
    """Either ``ell`` disjoint ``U``-``W`` paths or a separation of order ``< ell``.

    Each path meets ``U`` only in its first vertex and ``W`` only in its last;
    a vertex of ``U & W`` is a one-vertex path. The separation has ``U <= A``
    and ``W <= B``; among minimum cuts one avoiding ``U | W`` is preferred.
    Its sides may be improper when ``U`` or ``W`` is large.
    """
    um, wm = mask_of(U), mask_of(W)
    if not um or not wm:
        raise ValueError("U and W must be non-empty")
    if um.bit_count() == 1 and wm.bit_count() == 1 and um != wm:
        return _menger_pair(g, um.bit_length() - 1, wm.bit_length() - 1, ell)
    flow = _SplitFlow(g, um, wm)
    if flow.value >= ell:
        raw = flow.paths()
        paths = sorted((_trim(p, um, wm) for p in raw), key=lambda p: (len(p), p))[:ell]
        _check_paths(g, paths, um, wm)
        return MengerResult(paths=paths)
    a, b = flow.cut_sides()
    alt = _SplitFlow(g, um, wm, heavy=(um | wm) & ~(um & wm))
    if alt.value == flow.value:
        a, b = alt.cut_sides()
    sep = _sep(g, a, b)
    assert sep.is_valid(g, proper=False) and sep.order == flow.value
    assert um & ~a == 0 and wm & ~b == 0
    return MengerResult(separation=sep)


def _menger_pair(g: Graph, u: int, w: int, ell: int) -> MengerResult:
    """Two-terminal case: internally disjoint ``u``-``w`` paths."""
    from .graph import build_graph

    direct = g.has_edge(u, w)
    h = build_graph(g.n, [e for e in g.edges() if set(e) != {u, w}]) if direct else g
    heavy = (1 << u) | (1 << w)
    flow = _SplitFlow(h, 1 << u, 1 << w, heavy)
    total = flow.value + direct
    if total >= ell:
        paths = [[u, w]] if direct else []
        if flow.value:
            paths += [_unit_path(h, flow, u, w, first) for first in bits(h.adj[u])
                      if flow.cap[(2 * first, 2 * u + 1)] > 0]
        paths = sorted(paths, key=lambda p: (len(p), p))[:ell]
        inner = 0
        for p in paths:
            m = mask_of(p[1:-1])
            assert not m & inner and p[0] == u and p[-1] == w
            assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
            inner |= m
        return MengerResult(paths=paths)
    a, b = flow.cut_sides()
    if direct:
        b |= 1 << u
    sep = _sep(g, a, b)
    assert sep.is_valid(g, proper=False) and sep.order == total
    assert a >> u & 1 and b >> w & 1
    return MengerResult(separation=sep)


def _unit_path(h: Graph, flow: "_SplitFlow", u: int, w: int, first: int) -> list:
    p = [u, first]
    while p[-1] != w:
        x = p[-1]
        p.append(next(y for y in bits(h.adj[x]) if flow.cap[(2 * y, 2 * x + 1)] > 0))
    return p


def _trim(p: list, um: int, wm: int) -> list:
    start = max(i for i, v in enumerate(p) if um >> v & 1)
    p = p[start:]
    end = next(i for i, v in enumerate(p) if wm >> v & 1)
    return p[: end + 1]


def _check_paths(g: Graph, paths: list, um: int, wm: int) -> None:
    seen = 0
    for p in paths:
        m = mask_of(p)
        assert not m & seen, "paths not disjoint"
        assert len(set(p)) == len(p)
        seen |= m
        assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
        assert um >> p[0] & 1 and wm >> p[-1] & 1


# -------------------------------------------------------------- balanced


def balanced_limit(n: int) -> int:
    return -(-2 * n // 3)


def balanced_separator(g: Graph) -> Optional[Separation]:
    """Least-order separation with both sides of size at most ``ceil(2v/3)``.

    Ties: smaller larger side, then lexicographically least ``A``.
    ``None`` when the graph has no balanced separation (e.g. complete graphs).
    """
    if g.n < 2:
        raise ValueError("need at least two vertices")
    limit = balanced_limit(g.n)
    best = None
    best_order = None
    for s, comps in _separators(g, g.n - 2):
        order = s.bit_count()
        if best_order is not None and order > best_order:
            break
        split = _best_partition(s, comps)
        if split is None:
            continue
        a, b = split
        if max(a.bit_count(), b.bit_count()) > limit:
            continue
        key = (max(a.bit_count(), b.bit_count()), sorted(bits(a)))
        if best is None or key < best[0]:
            best = (key, a, b)
        best_order = order
    if best is None:
        return None
    return _sep(g, best[1], best[2])
