"""Minor models: verification, extension by paths, and exact search.

Two independent exact minor tests live here:

* :func:`test_minor` -- branch-and-bound over partial branch-set
  assignments (the primary search, also used for rooted models);
* :func:`test_minor_oracle2` -- recursion over single deletions and
  contractions, memoised on canonical forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .canon import canonical_form
from .config import resolve_cap
from .errors import BudgetExceeded, KeyMismatch, OutOfRange, PathViolation
from .graph import Graph, bits, component_masks, is_connected_mask, lowest, mask_of

__all__ = [
    "MinorModel",
    "ModelCheck",
    "RootedSpec",
    "extend_model_with_paths",
    "find_rooted_model",
    "find_subgraph_iso",
    "identity_model",
    "model_edge_count",
    "test_minor",
    "test_minor_oracle2",
    "verify_model",
]


@dataclass(frozen=True, eq=False)
class MinorModel:
    """Branch sets of a model of ``pattern`` in ``host``."""

    pattern: Graph
    host: Graph
    branch_sets: Mapping[int, frozenset]

    def mask(self, v: int) -> int:
        return mask_of(self.branch_sets[v])

    def used(self) -> frozenset:
        out = set()
        for s in self.branch_sets.values():
            out |= s
        return frozenset(out)

    def to_dict(self) -> dict:
        from .io import graph_to_dict

        return {
            "pattern": graph_to_dict(self.pattern),
            "host": graph_to_dict(self.host),
            "branch_sets": {str(v): sorted(s) for v, s in sorted(self.branch_sets.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MinorModel":
        from .io import graph_from_dict

        return cls(
            graph_from_dict(d["pattern"]),
            graph_from_dict(d["host"]),
            {int(k): frozenset(v) for k, v in d["branch_sets"].items()},
        )


def make_model(pattern: Graph, host: Graph, sets) -> MinorModel:
    """Build a model from a dict or list of masks / iterables."""
    items = sets.items() if isinstance(sets, Mapping) else enumerate(sets)
    out = {}
    for v, s in items:
        out[v] = frozenset(bits(s)) if isinstance(s, int) else frozenset(s)
    return MinorModel(pattern, host, out)


def identity_model(g: Graph) -> MinorModel:
    return make_model(g, g, {v: {v} for v in range(g.n)})


@dataclass(frozen=True)
class ModelCheck:
    ok: bool
    condition: Optional[str] = None
    vertex: Optional[int] = None
    edge: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_model(m: MinorModel) -> ModelCheck:
    """Check the three model conditions; report the first violation found."""
    h, g = m.pattern, m.host
    if set(m.branch_sets) != set(range(h.n)):
        raise KeyMismatch("branch_sets keys differ from the pattern's vertex set")
    seen = 0
    masks = {}
    for v in range(h.n):
        s = m.branch_sets[v]
        if not s:
            return ModelCheck(False, "empty branch set", vertex=v)
        if any(not 0 <= x < g.n for x in s):
            return ModelCheck(False, "branch set outside host", vertex=v)
        mk = mask_of(s)
        if mk & seen:
            return ModelCheck(False, "overlap", vertex=v)
        seen |= mk
        masks[v] = mk
    for v in range(h.n):
        if not is_connected_mask(g, masks[v]):
            return ModelCheck(False, "disconnected branch set", vertex=v)
    for u, v in h.edges():
        if not g.neighborhood(masks[u]) & masks[v]:
            return ModelCheck(False, "missing edge", edge=(u, v))
    return ModelCheck(True)


def model_edge_count(m: MinorModel) -> int:
    """Host edges lying inside or between branch sets."""
    used = mask_of(m.used())
    return sum((m.host.adj[x] & used).bit_count() for x in bits(used)) // 2


@dataclass(frozen=True)
class RootedSpec:
    """Injective map from (some or all) pattern vertices to host vertices."""

    roots: Mapping[int, int] = field(default_factory=dict)

    def validate(self, h: Graph, g: Graph) -> None:
        if len(set(self.roots.values())) != len(self.roots):
            raise ValueError("root map is not injective")
        for v, r in self.roots.items():
            if not 0 <= v < h.n:
                raise OutOfRange(f"pattern vertex {v} out of range")
            if not 0 <= r < g.n:
                raise OutOfRange(f"root {r} out of range")


# ---------------------------------------------------------------- search


def _search_order(h: Graph) -> list:
    order = []
    placed = 0
    remaining = set(range(h.n))
    while remaining:
        v = min(
            remaining,
            key=lambda x: (-h.degree(x), -(h.adj[x] & placed).bit_count(), x),
        )
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def _twin_predecessors(h: Graph, order: list, rooted) -> dict:
    """For each vertex, the previous vertex (in ``order``) of its twin class."""
    prev = {}
    last_open, last_closed = {}, {}
    for v in order:
        if v in rooted:
            continue
        open_key = h.adj[v]
        closed_key = h.adj[v] | (1 << v)
        if open_key in last_open:
            prev[v] = last_open[open_key]
        elif closed_key in last_closed:
            prev[v] = last_closed[closed_key]
        last_open[open_key] = v
        last_closed[closed_key] = v
    return prev


def _connected_sets(adj, seed: int, allowed: int, maxsize: int):
    """Connected vertex sets (as masks) containing ``seed`` inside ``allowed``."""
    start = 1 << seed
    ext0 = adj[seed] & allowed & ~start
    stack = [(start, ext0, 0, 1)]
    while stack:
        s, ext, excl, size = stack.pop()
        yield s
        if size == maxsize:
            continue
        children = []
        while ext:
            w = ext & -ext
            ext ^= w
            wi = w.bit_length() - 1
            new_ext = ext | (adj[wi] & allowed & ~s & ~excl & ~w)
            children.append((s | w, new_ext, excl, size + 1))
            excl |= w
        stack.extend(reversed(children))


class _ModelSearch:
    def __init__(self, h: Graph, g: Graph, roots=None, forbidden: int = 0):
        self.h, self.g = h, g
        self.roots = dict(roots or {})
        self.order = _search_order(h)
        self.twin_prev = _twin_predecessors(h, self.order, self.roots)
        self.available = g.vertex_mask & ~forbidden
        self.root_mask = mask_of(self.roots.values())
        self.hadj = h.adj
        self.nodes = 0

    def run(self) -> Optional[dict]:
        h, g = self.h, self.g
        if h.n == 0:
            return {}
        if h.n > self.available.bit_count():
            return None
        if any(not self.available >> r & 1 for r in self.roots.values()):
            return None
        self.assign = {}
        self.touch = {}
        if self._step(0, self.available):
            return {v: self.assign[v] for v in range(h.n)}
        return None

    def _unassigned_nbrs(self, y: int) -> int:
        return sum(1 for z in bits(self.hadj[y]) if z not in self.assign)

    def _feasible(self, free: int, pos: int) -> bool:
        h, g = self.h, self.g
        rest = self.order[pos:]
        if free.bit_count() < len(rest):
            return False
        for y, t in self.touch.items():
            need = self._unassigned_nbrs(y)
            if need and (t & free).bit_count() < need:
                return False
        if not rest:
            return True
        comps = component_masks(g, free)
        for z in rest:
            anchors = [self.touch[y] for y in bits(self.hadj[z]) if y in self.assign]
            r = self.roots.get(z)
            ok = False
            for c in comps:
                if r is not None and not c >> r & 1:
                    continue
                if all(c & a for a in anchors):
                    ok = True
                    break
            if not ok:
                return False
        return True

    def _candidates(self, x: int, free: int, pos: int):
        g = self.g
        remaining_after = len(self.order) - pos - 1
        others_roots = self.root_mask & ~(1 << self.roots[x]) if x in self.roots else self.root_mask
        pool = free & ~others_roots
        maxsize = pool.bit_count() - remaining_after + (others_roots & free).bit_count()
        maxsize = min(maxsize, pool.bit_count())
        if maxsize <= 0:
            return []
        anchors = [self.touch[y] for y in bits(self.hadj[x]) if y in self.assign]
        need_out = self._unassigned_nbrs(x)
        low = -1
        prev = self.twin_prev.get(x)
        if prev is not None:
            low = lowest(self.assign[prev])
        out = []
        if x in self.roots:
            seeds = [self.roots[x]]
        else:
            seeds = [v for v in bits(pool) if v > low]
        for seed in seeds:
            allowed = pool if x in self.roots else pool & ~((1 << seed) - 1)
            for s in _connected_sets(g.adj, seed, allowed, maxsize):
                if not all(s & a for a in anchors):
                    continue
                if need_out and (g.neighborhood(s) & free & ~s).bit_count() < need_out:
                    continue
                out.append(s)
        out.sort(key=lambda s: (s.bit_count(), sorted(bits(s))))
        return out

    def _step(self, pos: int, free: int) -> bool:
        if pos == len(self.order):
            return True
        x = self.order[pos]
        for s in self._candidates(x, free, pos):
            self.nodes += 1
            self.assign[x] = s
            self.touch[x] = self.g.neighborhood(s)
            nfree = free & ~s
            if self._feasible(nfree, pos + 1) and self._step(pos + 1, nfree):
                return True
            del self.assign[x]
            del self.touch[x]
        return False


def _check_cap(g: Graph, cap: Optional[int]) -> None:
    cap = resolve_cap(cap)
    if g.n > cap:
        raise BudgetExceeded(f"host has {g.n} vertices, above the search cap {cap}")


def test_minor(h: Graph, g: Graph, cap: Optional[int] = None) -> Optional[MinorModel]:
    """Exact minor test; returns a verified model or ``None``."""
    if h.n == 0:
        return make_model(h, g, {})
    _check_cap(g, cap)
    if h.n > g.n or h.e > g.e:
        return None
    found = _ModelSearch(h, g).run()
    if found is None:
        return None
    m = make_model(h, g, found)
    assert verify_model(m), "search produced an invalid model"
    return m


test_minor.__test__ = False  # not a pytest test


def find_rooted_model(h: Graph, g: Graph, spec, forbidden=(), cap: Optional[int] = None) -> Optional[MinorModel]:
    """Model of ``h`` in ``g`` with ``roots[v]`` inside the branch set of ``v``.

    ``spec`` may be a :class:`RootedSpec` or a plain dict; pattern vertices
    without a root are unconstrained. Host vertices in ``forbidden`` are not used.
    """
    if not isinstance(spec, RootedSpec):
        spec = RootedSpec(dict(spec))
    spec.validate(h, g)
    if h.n == 0:
        return make_model(h, g, {})
    _check_cap(g, cap)
    forbid = forbidden if isinstance(forbidden, int) else mask_of(forbidden)
    found = _ModelSearch(h, g, spec.roots, forbid).run()
    if found is None:
        return None
    m = make_model(h, g, found)
    assert verify_model(m)
    assert all(r in m.branch_sets[v] for v, r in spec.roots.items())
    return m


# ------------------------------------------------------ subgraph isomorphism


def find_subgraph_iso(h: Graph, g: Graph, forbidden=(), pinned=None, cap: Optional[int] = None) -> Optional[dict]:
    """Injective homomorphism ``h -> g`` extending ``pinned`` and avoiding ``forbidden``.

    Backtracking over pattern vertices in connectivity order; candidate sets
    are intersections of neighbourhood bitmasks.
    """
    pinned = dict(pinned or {})
    forbid = forbidden if isinstance(forbidden, int) else mask_of(forbidden)
    if g.n > max(resolve_cap(cap), 64):
        raise BudgetExceeded(f"host has {g.n} vertices")
    images = list(pinned.values())
    if len(set(images)) != len(images):
        raise ValueError("pinned map is not injective")
    for u, a in pinned.items():
        if a >> 0 < 0 or not 0 <= a < g.n or not 0 <= u < h.n:
            raise OutOfRange("pinned vertex out of range")
        if forbid >> a & 1:
            return None
    for u, v in h.edges():
        if u in pinned and v in pinned and not g.has_edge(pinned[u], pinned[v]):
            return None
    if h.n > g.n - forbid.bit_count() or h.e > g.e:
        return None

    order = []
    placed = mask_of(pinned)
    rest = set(range(h.n)) - set(pinned)
    while rest:
        v = min(rest, key=lambda x: (-(h.adj[x] & placed).bit_count(), -h.degree(x), x))
        order.append(v)
        placed |= 1 << v
        rest.discard(v)
    gdeg = g.degrees()
    phi = dict(pinned)
    used = mask_of(pinned.values()) | forbid
    base = g.vertex_mask

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        cand = base & ~used
        for y in bits(h.adj[x]):
            if y in phi:
                cand &= g.adj[phi[y]]
        dx = h.degree(x)
        for c in bits(cand):
            if gdeg[c] < dx:
                continue
            phi[x] = c
            if rec(i + 1, used | (1 << c)):
                return True
            del phi[x]
        return False

    if rec(0, used):
        return dict(sorted(phi.items()))
    return None


# ----------------------------------------------------------- second oracle

_ORACLE2_MEMO: dict = {}


def test_minor_oracle2(h: Graph, g: Graph, cap: Optional[int] = None) -> bool:
    """Exact minor test by deletion/contraction recursion.

    ``H <= G`` iff ``H`` is a subgraph of ``G``, or ``H <= G/e`` for an edge
    ``e``, or ``H <= G - v`` when ``G`` has more vertices than ``H``.
    Results are memoised on canonical forms of both graphs.
    """
    if h.n == 0:
        return True
    _check_cap(g, cap)
    hkey = canonical_form(h)
    memo = _ORACLE2_MEMO.setdefault(hkey, {})
    if len(_ORACLE2_MEMO) > 256:
        _ORACLE2_MEMO.clear()
        memo = _ORACLE2_MEMO.setdefault(hkey, {})
    return _oracle2(h, g, memo)


test_minor_oracle2.__test__ = False


def _oracle2(h: Graph, g: Graph, memo: dict) -> bool:
    from .graph import contract_edge, delete_vertices

    key = canonical_form(g)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if g.n < h.n or g.e < h.e:
        result = False
    elif find_subgraph_iso(h, g, cap=64) is not None:
        result = True
    elif g.n == h.n:
        result = False
    else:
        result = False
        seen = set()
        children = [contract_edge(g, u, v)[0] for u, v in g.edges()]
        children += [delete_vertices(g, [v])[0] for v in range(g.n)]
        for c in children:
            if c.e < h.e:
                continue
            ck = canonical_form(c)
            if ck in seen:
                continue
            seen.add(ck)
            if _oracle2(h, c, memo):
                result = True
                break
    memo[key] = result
    return result


# ---------------------------------------------------------------- paths


def extend_model_with_paths(m: MinorModel, F, paths: Mapping, pattern: Optional[Graph] = None) -> MinorModel:
    """Extend a model of ``H - F`` to a model of ``H`` using one path per ``F``-edge.

    Each path must have one end in ``mu(u)``, the other in ``mu(v)``, be
    otherwise disjoint from every branch set, and be internally disjoint from
    the other paths. Internal vertices are absorbed into the branch set of the
    endpoint the path leaves from.
    """
    from .graph import build_graph

    h_minus = m.pattern
    g = m.host
    F = [tuple(f) for f in F]
    if pattern is None:
        pattern = build_graph(h_minus.n, h_minus.edges() + F, h_minus.label)
    if not F:
        return MinorModel(pattern, g, dict(m.branch_sets))
    masks = {v: m.mask(v) for v in range(h_minus.n)}
    all_used = 0
    for mk in masks.values():
        all_used |= mk
    interiors_seen = 0
    new = dict(masks)
    for f in F:
        u, v = f
        p = paths.get(f)
        if p is None:
            p = paths.get((v, u))
        if p is None:
            raise PathViolation(f"no path supplied for edge {f}", path=None)
        p = list(p)
        if not p:
            raise PathViolation(f"empty path for edge {f}", path=p)
        if p[0] in m.branch_sets[v] and p[-1] in m.branch_sets[u]:
            p = p[::-1]
        if p[0] not in m.branch_sets[u] or p[-1] not in m.branch_sets[v]:
            raise PathViolation(f"path for {f} does not join mu({u}) to mu({v})", path=p)
        if len(set(p)) != len(p):
            raise PathViolation(f"path for {f} repeats a vertex", path=p)
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                raise PathViolation(f"path for {f} uses non-edge ({a}, {b})", path=p)
        inner = mask_of(p[1:-1])
        if inner & all_used:
            raise PathViolation(f"path for {f} meets a branch set internally", path=p)
        if inner & interiors_seen:
            raise PathViolation(f"path for {f} shares an internal vertex with another path", path=p)
        interiors_seen |= inner
        new[u] |= inner
    out = make_model(pattern, g, new)
    check = verify_model(out)
    if not check:
        raise PathViolation(f"extended model invalid: {check.condition}")
    return out
