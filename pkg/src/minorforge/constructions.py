"""Graphs with large minimum (or average) degree and no minor of a given
pattern, a bounded-degree bipartite expansion, and a small-graph search for
counterexamples to degree conditions forcing a minor.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb, isqrt
from typing import Iterable, Iterator, Optional

from .canon import canonical_form
from .errors import BudgetExceeded, InfeasibleParameters, SlotAllocationFailed
from .generators import complement, complete_multipartite, regular_high_girth
from .graph import Graph, bits, build_graph, density
from .models import MinorModel, make_model, test_minor, test_minor_oracle2, verify_model

__all__ = [
    "ExpandResult",
    "RegimeWarning",
    "bipartite_expand",
    "certify_no_minor",
    "construct_kst_blocker",
    "construct_sk7_blocker",
    "construct_sktt_blocker",
    "ha_falsify",
    "kst_parameters",
    "small_graphs_min_degree",
]


class RegimeWarning(UserWarning):
    """Parameters lie below the range where the degree bound is guaranteed."""


def _ceil_sqrt(x: int) -> int:
    r = isqrt(x)
    return r if r * r == x else r + 1


def kst_parameters(s: int, t: int) -> dict:
    """Degree ``d``, girth threshold and order of the sparse graph whose complement is used.

    All roundings are exact: ``d = ceil(sqrt(2s))`` and
    ``m = floor((t - sqrt(2s)) / 2)`` is the largest ``m`` with
    ``t - 2m >= 0`` and ``(t - 2m)^2 >= 2s``.
    """
    if s < 1 or t < 1:
        raise InfeasibleParameters("s and t must be positive")
    d = _ceil_sqrt(2 * s)
    m = t // 2
    while not (t - 2 * m >= 0 and (t - 2 * m) ** 2 >= 2 * s):
        m -= 1
    n = 2 * (s + m)
    return {"d": d, "girth_gt": (d + 1) * s, "n": n}


def _kst_bound_holds(delta: int, s: int, t: int) -> bool:
    """``delta >= 2s + t - 2 sqrt(2s) - 2``, decided exactly."""
    a = delta - 2 * s - t + 2
    return a >= 0 or a * a <= 8 * s


def construct_kst_blocker(s: int, t: int, seed: int = 0) -> Graph:
    """Complement of a ``d``-regular graph of girth above ``(d+1)s``; no ``K_{s,t}`` minor.

    Warns with :class:`RegimeWarning` when the minimum degree falls short of
    ``2s + t - 2 sqrt(2s) - 2``.
    """
    p = kst_parameters(s, t)
    d, girth_gt, n = p["d"], p["girth_gt"], p["n"]
    if n <= d:
        raise InfeasibleParameters(f"order {n} too small for a {d}-regular graph")
    sparse = regular_high_girth(d, girth_gt, n, seed=seed)
    g = complement(sparse).with_label(f"kst-blocker({s},{t})")
    assert g.min_degree() == g.n - d - 1
    if not _kst_bound_holds(g.min_degree(), s, t):
        warnings.warn(
            f"min degree {g.min_degree()} is below 2s + t - 2 sqrt(2s) - 2 for s={s}, t={t}",
            RegimeWarning,
            stacklevel=2,
        )
    return g


def construct_sk7_blocker(s: int) -> Graph:
    """Complete tripartite graph with parts of size ``floor((11s - 1)/3)``."""
    if s < 1:
        raise InfeasibleParameters("s must be positive")
    t = (11 * s - 1) // 3
    g = complete_multipartite([t, t, t]).with_label(f"sk7-blocker({s})")
    assert g.min_degree() == 2 * t and 6 * t >= 22 * s - 6
    return g


def construct_sktt_blocker(s: int, t: int, k: int) -> Graph:
    """``k`` disjoint ``t``-cliques plus ``st - 1`` universal vertices."""
    if min(s, t, k) < 1:
        raise InfeasibleParameters("s, t, k must be positive")
    y = s * t - 1
    n = k * t + y
    edges = []
    for i in range(k):
        base = i * t
        edges += [(base + a, base + b) for a in range(t) for b in range(a + 1, t)]
    ys = range(k * t, n)
    edges += [(u, v) for u in ys for v in range(n) if v != u and (v < k * t or v > u)]
    g = build_graph(n, edges, f"G({s},{t},{k})")
    assert g.n == k * t + s * t - 1
    assert g.e == comb(y, 2) + y * k * t + k * comb(t, 2)
    return g


# ------------------------------------------------------------ bipartite


@dataclass
class ExpandResult:
    graph: Graph
    A: frozenset
    B: frozenset
    model: MinorModel
    k: dict


def bipartite_expand(h: Graph, delta: int) -> ExpandResult:
    """Bipartite graph of max degree ``delta`` that has ``h`` as a minor.

    Each vertex ``v`` becomes an alternating path ``a1 b1 ... ak bk`` with
    ``k = deg(v) // (delta - 2) + 1``; each edge ``uv`` (``u < v``) becomes one
    edge from the ``a``-side of ``u`` to the ``b``-side of ``v``, placed on the
    path vertices with the fewest crossing edges so far.
    """
    if delta < 3:
        raise InfeasibleParameters("delta must be at least 3")
    k = {v: h.degree(v) // (delta - 2) + 1 for v in range(h.n)}
    a_ids, b_ids = {}, {}
    n = 0
    edges = []
    for v in range(h.n):
        a_ids[v] = list(range(n, n + k[v]))
        b_ids[v] = list(range(n + k[v], n + 2 * k[v]))
        n += 2 * k[v]
        walk = [x for pair in zip(a_ids[v], b_ids[v]) for x in pair]
        edges += list(zip(walk, walk[1:]))
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    used = [0] * n

    def slot(side: list) -> int:
        best = min(side, key=lambda x: (used[x], x))
        if deg[best] >= delta:
            raise SlotAllocationFailed(f"no free slot among {side}")
        return best

    for u, v in h.edges():
        x, y = slot(a_ids[u]), slot(b_ids[v])
        edges.append((x, y))
        for z in (x, y):
            used[z] += 1
            deg[z] += 1
    g = build_graph(n, edges, f"{h.label}-bip{delta}" if h.label else "")
    A = frozenset(x for v in range(h.n) for x in a_ids[v])
    B = frozenset(x for v in range(h.n) for x in b_ids[v])
    model = make_model(h, g, {v: set(a_ids[v]) | set(b_ids[v]) for v in range(h.n)})
    assert g.max_degree() <= delta and verify_model(model)
    assert all((a in A) != (b in A) for a, b in g.edges())
    return ExpandResult(g, A, B, model, k)


# ------------------------------------------------------------ certificates


def certify_no_minor(g: Graph, patterns: Iterable[Graph], claimed: Optional[dict] = None) -> dict:
    """Run both exact minor oracles; report verdicts and whether they agree."""
    checks = []
    for h in patterns:
        a = test_minor(h, g)
        b = test_minor_oracle2(h, g)
        checks.append({
            "pattern": h.label or f"n={h.n},e={h.e}",
            "verdict": "found" if a is not None else "absent",
            "oracle_agreement": (a is not None) == b,
        })
    return {
        "graph": {"n": g.n, "edges": [list(e) for e in g.edges()], "label": g.label},
        "claimed_bounds": claimed or {},
        "recomputed_bounds": {
            "v": g.n, "e": g.e, "min_degree": g.min_degree(), "density": density(g),
        },
        "minor_checks": checks,
    }


# ------------------------------------------------------------ falsifier


def _tight(g: Graph, d: int) -> bool:
    """No edge joins two vertices of degree above ``d``."""
    over = 0
    for v in range(g.n):
        if g.degree(v) > d:
            over |= 1 << v
    return all(not g.adj[v] & over for v in bits(over))


def small_graphs_min_degree(max_n: int, d: int, minimal: bool = False, budget: int = 3_000_000) -> Iterator[Graph]:
    """Non-isomorphic graphs on ``1..max_n`` vertices with minimum degree at least ``d``.

    Vertices are added one at a time; a partial graph on ``m`` vertices is
    kept only if every vertex can still reach degree ``d`` by ``max_n``.
    With ``minimal`` only edge-minimal graphs are produced (every edge has an
    end of degree exactly ``d``); degrees never drop, so partial graphs with
    an edge between two vertices of degree above ``d`` are cut early.
    Yields graphs of each order in canonical-form order.
    """
    level = {canonical_form(Graph(1, (0,))): Graph(1, (0,))}
    spent = 0
    for m in range(1, max_n + 1):
        for key in sorted(level):
            g = level[key]
            if g.min_degree() >= d:
                yield g
        if m == max_n:
            return
        slack = max_n - m - 1
        nxt = {}
        for g in level.values():
            required = 0
            for v in range(m):
                if g.degree(v) + 1 + slack < d:
                    break
                if g.degree(v) + slack < d:
                    required |= 1 << v
            else:
                optional = [v for v in range(m) if not required >> v & 1]
                for pick in range(1 << len(optional)):
                    s = required
                    for i, v in enumerate(optional):
                        if pick >> i & 1:
                            s |= 1 << v
                    if s.bit_count() + slack < d:
                        continue
                    spent += 1
                    if spent > budget:
                        raise BudgetExceeded(f"small-graph generation exceeded {budget} candidates")
                    adj = [a | (1 << m) if s >> v & 1 else a for v, a in enumerate(g.adj)] + [s]
                    ng = Graph(m + 1, tuple(adj))
                    if minimal and not _tight(ng, d):
                        continue
                    key = canonical_form(ng)
                    if key not in nxt:
                        nxt[key] = Graph(*key)
        level = nxt


def _construction_candidates(max_n: int) -> Iterator[Graph]:
    out = []
    for s in range(1, 4):
        g = construct_sk7_blocker(s)
        if g.n <= max_n:
            out.append(g)
    for s in range(1, 4):
        for t in range(1, 8):
            for k in range(1, 8):
                if k * t + s * t - 1 <= max_n:
                    out.append(construct_sktt_blocker(s, t, k))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        for s in range(1, 4):
            for t in range(1, 16):
                try:
                    p = kst_parameters(s, t)
                    if 0 < p["n"] <= max_n:
                        out.append(construct_kst_blocker(s, t))
                except InfeasibleParameters:
                    continue
    out.sort(key=lambda g: (g.n, g.e, canonical_form(g)))
    return iter(out)


def ha_falsify(h: Graph, max_n: int, source: str = "all", corpus: Optional[Iterable[Graph]] = None) -> Optional[Graph]:
    """First graph with min degree ``>= v(h) - 1`` and no ``h`` minor, or ``None``.

    ``source`` is ``"all"`` (every graph on at most ``max_n <= 9`` vertices,
    or the given ``corpus``) or ``"constructions"`` (the blocker families).
    The built-in enumeration only visits edge-minimal graphs: every
    counterexample contains a spanning one, and minor-freeness passes to
    subgraphs.
    """
    d = h.n - 1
    if source in ("all", "all_small_graphs"):
        if corpus is not None:
            cands = (g for g in corpus if g.n <= max_n)
        else:
            if max_n > 9:
                raise BudgetExceeded("built-in enumeration stops at 9 vertices; supply a corpus")
            cands = small_graphs_min_degree(max_n, d, minimal=True)
    elif source in ("constructions", "constructions_only"):
        cands = _construction_candidates(max_n)
    else:
        raise ValueError(f"unknown source {source!r}")
    for g in cands:
        if g.n == 0 or g.min_degree() < d:
            continue
        if test_minor(h, g) is None:
            return g
    return None
