"""Density increment: high-degree pruning, the small-dense-subgraph or
denser-minor step, the piece-extraction loop, and highly connected subgraphs.

Density means ``e(G)/v(G)`` throughout, computed as an exact ``Fraction``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .config import resolve_cap
from .errors import BudgetExceeded, PreconditionViolated
from .graph import Graph, bits, lowest, component_masks, contract_edge, density, induced_mask, mask_of
from .models import MinorModel, make_model, verify_model

__all__ = [
    "IncrementOutcome",
    "PruneResult",
    "dense_step",
    "extract_pieces",
    "mader_subgraph",
    "mader_subgraph_with_ids",
    "prune_high_degree",
    "extraction_constants",
]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def _mask_density(g: Graph, mask: int) -> Fraction:
    e = sum((g.adj[v] & mask).bit_count() for v in bits(mask)) // 2
    return Fraction(e, mask.bit_count())


def _mask_edges(g: Graph, mask: int) -> int:
    return sum((g.adj[v] & mask).bit_count() for v in bits(mask)) // 2


# ------------------------------------------------------------------ pruning


@dataclass
class PruneResult:
    graph: Graph
    kept: list
    removed: list
    density: Optional[Fraction]
    bound_checked: bool = False
    bound_ok: Optional[bool] = None


def prune_high_degree(g: Graph, D: int, alpha=1, eps=None) -> PruneResult:
    """Delete every vertex of degree above ``(1 + alpha) D``.

    With ``eps`` given and ``d(g) <= (1 + eps) D / 2``, also checks
    ``|X| <= (eps / alpha) v(g)`` for the deleted set ``X``.
    """
    alpha = _frac(alpha)
    if g.n and g.min_degree() < D:
        raise PreconditionViolated(f"min degree {g.min_degree()} < D = {D}")
    limit = (1 + alpha) * D
    removed = [v for v in range(g.n) if g.degree(v) > limit]
    sub, kept = induced_mask(g, g.vertex_mask & ~mask_of(removed))
    res = PruneResult(sub.with_label(g.label), kept, removed, density(sub))
    if eps is not None and g.n:
        eps = _frac(eps)
        if density(g) <= (1 + eps) * D / 2:
            res.bound_checked = True
            res.bound_ok = len(removed) <= eps / alpha * g.n
    return res


# ------------------------------------------------------------- outcomes


@dataclass
class IncrementOutcome:
    """One of ``pieces``, ``denser_minor`` or ``inconclusive``."""

    tag: str
    pieces: list = field(default_factory=list)
    minor: Optional[Graph] = None
    model: Optional[MinorModel] = None
    threshold: Optional[Fraction] = None
    reason: str = ""
    round: Optional[int] = None
    ledger: list = field(default_factory=list)
    constants: dict = field(default_factory=dict)

    def piece_graphs(self, g: Graph) -> list:
        return [induced_mask(g, mask_of(p))[0] for p in self.pieces]

    def violations(self, g: Graph, vmax=None, dmin=None) -> list:
        out = []
        if self.tag == "pieces":
            seen = 0
            for p in self.pieces:
                m = mask_of(p)
                if m & seen:
                    out.append("pieces overlap")
                seen |= m
                if vmax is not None and len(p) > vmax:
                    out.append(f"piece has {len(p)} > {vmax} vertices")
                if dmin is not None and _mask_density(g, m) < dmin:
                    out.append("piece density below bound")
        elif self.tag == "denser_minor":
            if not verify_model(self.model):
                out.append("model invalid")
            if self.threshold is not None and density(self.minor) < self.threshold:
                out.append("minor density below threshold")
        return out

    def to_dict(self) -> dict:
        d = {"tag": self.tag, "reason": self.reason, "round": self.round, "ledger": self.ledger}
        if self.tag == "pieces":
            d["pieces"] = [sorted(p) for p in self.pieces]
        if self.tag == "denser_minor":
            d["minor"] = {"n": self.minor.n, "edges": [list(e) for e in self.minor.edges()]}
            d["branch_sets"] = {str(k): sorted(v) for k, v in self.model.branch_sets.items()}
            d["threshold"] = self.threshold
        if self.constants:
            d["constants"] = self.constants
        return d


# --------------------------------------------------------- one dense step


def _peel_order(g: Graph, mask: int) -> list:
    """Vertices of ``mask`` in min-degree removal order."""
    deg = {v: (g.adj[v] & mask).bit_count() for v in bits(mask)}
    alive = mask
    order = []
    while alive:
        v = min(bits(alive), key=lambda x: (deg[x], x))
        order.append(v)
        alive &= ~(1 << v)
        for w in bits(g.adj[v] & alive):
            deg[w] -= 1
    return order


def _densest_core(g: Graph, mask: int) -> int:
    order = _peel_order(g, mask)
    best, best_d = mask, _mask_density(g, mask)
    cur = mask
    for v in order[:-1]:
        cur &= ~(1 << v)
        d = _mask_density(g, cur)
        if d > best_d:
            best, best_d = cur, d
    return best


def _find_small_dense(g: Graph, vmax: int, dmin: Fraction, exact_cap: int) -> Optional[int]:
    """Smallest vertex set with at most ``vmax`` vertices and density at least ``dmin``."""
    if vmax < 1:
        return None
    full = g.vertex_mask
    if g.n <= exact_cap:
        for k in range(1, min(vmax, g.n) + 1):
            need = math.ceil(dmin * k)
            for combo in combinations(range(g.n), k):
                m = mask_of(combo)
                if _mask_edges(g, m) >= need:
                    return m
        return None
    found = []
    # suffixes of the peeling order
    cur = full
    for v in _peel_order(g, full):
        if cur.bit_count() <= vmax and _mask_density(g, cur) >= dmin:
            found.append(cur)
        cur &= ~(1 << v)
    # greedy growth from each seed
    for seed in range(g.n):
        m = 1 << seed
        while m.bit_count() < vmax:
            cand = g.neighborhood(m)
            if not cand:
                break
            w = max(bits(cand), key=lambda x: ((g.adj[x] & m).bit_count(), -x))
            m |= 1 << w
            if _mask_density(g, m) >= dmin:
                found.append(m)
                break
    if not found:
        return None
    return min(found, key=lambda m: (m.bit_count(), sorted(bits(m))))


def _densest_component(g: Graph, mask: int) -> int:
    sub, old = induced_mask(g, mask)
    comps = component_masks(sub)
    best = max(comps, key=lambda c: (_mask_density(sub, c), -c.bit_count()))
    return mask_of(old[i] for i in bits(best))


def _contract_towards(g: Graph, mask: int, target: Fraction):
    """Contract edges inside ``G[mask]`` looking for a minor of density ``>= target``.

    First a maximal matching is contracted at once; failing that, edges are
    contracted one at a time, each time the edge losing fewest edges.
    Returns ``(minor, branch sets)`` or ``None``.
    """
    sub, old = induced_mask(g, mask)
    # maximal matching in ascending edge order
    matched = 0
    pairs = []
    for u, v in sub.edges():
        if not (matched >> u & 1 or matched >> v & 1):
            pairs.append((u, v))
            matched |= (1 << u) | (1 << v)
    attempts = []
    if pairs:
        h, groups = sub, [[i] for i in range(sub.n)]
        for u, v in pairs:
            cu = next(i for i, gr in enumerate(groups) if u in gr)
            cv = next(i for i, gr in enumerate(groups) if v in gr)
            h, groups = _contract_groups(h, groups, cu, cv)
        attempts.append((h, groups))
    h, groups = sub, [[i] for i in range(sub.n)]
    while h.e:
        u, v = min(h.edges(), key=lambda e: ((h.adj[e[0]] & h.adj[e[1]]).bit_count(), e))
        h, groups = _contract_groups(h, groups, u, v)
        attempts.append((h, groups))
        if density(h) >= target:
            break
    for h, groups in attempts:
        if h.n and density(h) >= target:
            return h, {i: frozenset(old[x] for x in gr) for i, gr in enumerate(groups)}
    return None


def _contract_groups(h: Graph, groups: list, u: int, v: int):
    h2, idmap = contract_edge(h, u, v)
    new = [[] for _ in range(h2.n)]
    for x, gr in enumerate(groups):
        new[idmap[x]].extend(gr)
    return h2, new


def _dense_or_minor(g: Graph, vmax, dmin, minor_target, exact_cap: int) -> IncrementOutcome:
    m = _find_small_dense(g, int(math.floor(vmax)), dmin, exact_cap)
    if m is not None:
        m = _densest_component(g, m)
        return IncrementOutcome("pieces", pieces=[frozenset(bits(m))])
    core = _densest_core(g, g.vertex_mask)
    got = _contract_towards(g, core, minor_target)
    if got is not None:
        h, sets = got
        model = make_model(h, g, sets)
        assert verify_model(model)
        return IncrementOutcome("denser_minor", minor=h, model=model, threshold=minor_target)
    return IncrementOutcome("inconclusive", reason="no small dense subgraph and no denser minor found")


def dense_step(g: Graph, eps, strict: bool = True, cap: Optional[int] = None) -> IncrementOutcome:
    """One dichotomy step: a subgraph ``J`` with ``v(J) <= d/(2 eps)`` and
    ``d(J) >= eps d``, or a minor of density ``>= (1 + eps) d``, or inconclusive.

    The subgraph search is exhaustive when ``v(g)`` is within the cap and
    greedy otherwise. ``strict`` enforces ``d(g) >= 2/eps``.
    """
    eps = _frac(eps)
    if eps <= 0:
        raise PreconditionViolated("eps must be positive")
    if g.n == 0:
        raise PreconditionViolated("graph must be non-null")
    d = density(g)
    if strict and d < 2 / eps:
        raise PreconditionViolated(f"density {d} < 2/eps = {2 / eps}")
    out = _dense_or_minor(g, d / (2 * eps), eps * d, (1 + eps) * d, resolve_cap(cap))
    if out.tag == "pieces":
        out.threshold = eps * d
    return out


# -------------------------------------------------------- piece extraction


def extraction_constants(K: int, eps, gamma) -> dict:
    """Constants of the piece-extraction loop for the given ``K``, ``eps`` and ``gamma``."""
    eps, gamma = _frac(eps), _frac(gamma)
    C = (K + 1 + 1 / (3 * gamma)) / eps
    beta = 1 / (eps * C)
    alpha = Fraction(1)
    eps_prune = min(gamma / (2 * (1 + 1 / alpha)), alpha * beta)
    eps_prime = min(eps_prune, (1 + 3 * eps) * (1 - gamma) ** K - 1)
    return {
        "C": C,
        "eps_prime": eps_prime,
        "eps_prune": eps_prune,
        "gamma_ok": (1 - gamma) ** (K + 1) >= Fraction(2, 3),
        "eps_ok": eps < Fraction(1, 300),
    }


def extract_pieces(g: Graph, D: int, K: int, eps=Fraction(1, 20), gamma=Fraction(1, 5), cap: Optional[int] = None) -> IncrementOutcome:
    """Find ``K`` disjoint small dense pieces, or a denser minor, or stop inconclusive.

    Each round applies the dense step with ``3 eps`` to what is left of the
    pruned graph, asking for a piece with ``v <= min(d/(6 eps), D/eps)`` and
    ``d >= max(3 eps d, eps D)``. Piece vertex sets use the ids of ``g``.
    The ledger records, per round, whether the piece bounds and the running
    size and density bounds on the remaining graph hold.
    """
    eps, gamma = _frac(eps), _frac(gamma)
    if g.n and g.min_degree() < D:
        raise PreconditionViolated(f"min degree {g.min_degree()} < D = {D}")
    consts = extraction_constants(K, eps, gamma)
    ledger = []
    exact_cap = resolve_cap(cap)

    def outcome(tag, **kw):
        return IncrementOutcome(tag, ledger=ledger, constants=consts, **kw)

    if K == 0:
        return outcome("pieces")
    dg = density(g)
    eps_prime = consts["eps_prime"]
    if eps_prime > 0 and dg > (1 + eps_prime) * D / 2:
        ledger.append({"round": 0, "v": g.n, "e": g.e, "density": dg, "action": "dense host", "bounds_ok": True})
        model = make_model(g, g, {v: {v} for v in range(g.n)})
        return outcome("denser_minor", minor=g, model=model, threshold=(1 + eps_prime) * D / 2, round=0)
    pr = prune_high_degree(g, D, 1, eps_prime if eps_prime > 0 else None)
    cur_mask = mask_of(pr.kept)
    d0 = _mask_density(g, cur_mask) if cur_mask else Fraction(0)
    ledger.append({
        "round": 0, "v": cur_mask.bit_count(), "e": _mask_edges(g, cur_mask), "density": d0,
        "action": f"pruned {len(pr.removed)} vertices", "bounds_ok": d0 >= (1 - gamma) * D / 2,
    })
    pieces = []
    for i in range(1, K + 1):
        if not cur_mask:
            return outcome("inconclusive", pieces=pieces, reason="graph exhausted", round=i)
        sub, old = induced_mask(g, cur_mask)
        d_prev = density(sub)
        vmax = min(d_prev / (6 * eps), D / eps)
        dmin = max(3 * eps * d_prev, eps * D)
        step = _dense_or_minor(sub, vmax, dmin, (1 + 3 * eps) * d_prev, exact_cap)
        row = {"round": i, "v": sub.n, "e": sub.e, "density": d_prev,
               "hypothesis_ok": d_prev >= 2 / (3 * eps)}
        if step.tag == "pieces":
            piece = frozenset(old[x] for x in step.pieces[0])
            pm = mask_of(piece)
            pieces.append(piece)
            cur_mask &= ~pm
            rest_d = _mask_density(g, cur_mask) if cur_mask else Fraction(0)
            row.update({
                "action": "piece",
                "piece_v": len(piece),
                "piece_density": _mask_density(g, pm),
                "bounds_ok": len(piece) <= D / eps and _mask_density(g, pm) >= eps * D,
                "remaining_v_ok": cur_mask.bit_count() >= (consts["C"] - Fraction(i + 1) / eps) * D,
                "remaining_density_ok": rest_d >= (1 - gamma) ** (i + 1) * D / 2,
            })
            ledger.append(row)
            continue
        if step.tag == "denser_minor":
            sets = {k: frozenset(old[x] for x in v) for k, v in step.model.branch_sets.items()}
            model = make_model(step.minor, g, sets)
            row.update({"action": "denser minor", "bounds_ok": density(step.minor) >= step.threshold})
            ledger.append(row)
            return outcome("denser_minor", pieces=pieces, minor=step.minor, model=model,
                           threshold=step.threshold, round=i)
        row.update({"action": "inconclusive", "bounds_ok": False})
        ledger.append(row)
        return outcome("inconclusive", pieces=pieces, reason=step.reason, round=i)
    return outcome("pieces", pieces=pieces)


# --------------------------------------------------- connected subgraphs


def _min_cut(g: Graph) -> Optional[frozenset]:
    from .separations import min_vertex_cut

    best = None
    for u in range(g.n):
        for w in range(u + 1, g.n):
            if not g.has_edge(u, w):
                cut = min_vertex_cut(g, u, w)
                if best is None or (len(cut), sorted(cut)) < (len(best), sorted(best)):
                    best = cut
                    if not cut:
                        return best
    return best


def mader_subgraph(g: Graph) -> Graph:
    """A subgraph whose connectivity is at least ``ceil(d(g)/2)``."""
    return mader_subgraph_with_ids(g)[0]


def mader_subgraph_with_ids(g: Graph, exhaustive_limit: int = 12) -> tuple:
    """Peel along small separations, keeping the denser side; verify the result.

    Falls back to exhaustive search over induced subgraphs on at most
    ``exhaustive_limit`` vertices if peeling ends below target.
    """
    from .separations import connectivity

    if g.e < 1:
        raise PreconditionViolated("need at least one edge")
    t = math.ceil(density(g) / 2)
    mask = g.vertex_mask
    while True:
        sub, old = induced_mask(g, mask)
        if sub.n >= 2 and connectivity(sub) >= t:
            return sub.with_label(g.label), old
        cut = _min_cut(sub)
        if cut is None or len(cut) >= t:
            break
        cm = mask_of(cut)
        sides = [cm | c for c in component_masks(sub, sub.vertex_mask & ~cm)]
        best = max(sides, key=lambda s: (_mask_density(sub, s), -lowest(s)))
        mask = mask_of(old[i] for i in bits(best))
    if g.n > exhaustive_limit:
        raise BudgetExceeded(f"peeling fell short and v(g) = {g.n} exceeds the exhaustive limit")
    for k in range(g.n, 1, -1):
        for combo in combinations(range(g.n), k):
            sub, old = induced_mask(g, mask_of(combo))
            if sub.e and connectivity(sub) >= t:
                return sub.with_label(g.label), old
    raise AssertionError("no highly connected subgraph exists")
