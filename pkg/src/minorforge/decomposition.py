"""Bounded decompositions and the expansion of a graph into bounded-size
pieces joined by copy paths.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InvalidDecomposition, NoSeparatorSmallEnough
from .graph import Graph, bits, build_graph, component_masks, induced_mask, mask_of
from .models import MinorModel, verify_model

__all__ = [
    "Decomposition",
    "ExpansionResult",
    "bounded_decomposition",
    "expand_for_component_size",
]


@dataclass(frozen=True)
class Decomposition:
    bags: tuple
    C: Optional[int] = None
    n: Optional[int] = None

    @property
    def excess(self) -> int:
        return sum(len(b) for b in self.bags) - (self.n or 0)

    def violations(self, h: Graph) -> list:
        out = []
        for i, b in enumerate(self.bags):
            if any(not 0 <= v < h.n for v in b):
                out.append(f"bag {i} has a vertex outside the graph")
            if self.C is not None and len(b) > self.C:
                out.append(f"bag {i} has {len(b)} > C = {self.C} vertices")
        masks = [mask_of(b) for b in self.bags]
        for u, v in h.edges():
            pair = (1 << u) | (1 << v)
            if not any(m & pair == pair for m in masks):
                out.append(f"edge ({u}, {v}) lies in no bag")
        return out

    def to_dict(self) -> dict:
        return {"bags": [sorted(b) for b in self.bags], "C": self.C, "excess": self.excess}

    @classmethod
    def from_dict(cls, d: dict, n: int) -> "Decomposition":
        return cls(tuple(frozenset(b) for b in d["bags"]), d.get("C"), n)


def bounded_decomposition(h: Graph, C: int) -> Decomposition:
    """Split recursively along balanced separators until every bag has at most ``C`` vertices.

    The separator ``A & B`` is copied into both sides. Raises
    :class:`NoSeparatorSmallEnough` when an oversized piece has no balanced separation.
    """
    from .separations import balanced_separator

    if C < 2:
        raise ValueError("C must be at least 2")
    bags = []

    def rec(mask: int) -> None:
        if mask.bit_count() <= C:
            if mask:
                bags.append(frozenset(bits(mask)))
            return
        sub, old = induced_mask(h, mask)
        sep = balanced_separator(sub)
        if sep is None:
            raise NoSeparatorSmallEnough(
                f"a piece on {sub.n} vertices (> C = {C}) has no balanced separation"
            )
        rec(mask_of(old[v] for v in sep.A))
        rec(mask_of(old[v] for v in sep.B))

    rec(h.vertex_mask)
    d = Decomposition(tuple(bags), C, h.n)
    problems = d.violations(h)
    assert not problems, problems
    return d


@dataclass
class ExpansionResult:
    h: Graph
    h_prime: Graph
    F: list
    copy_paths: dict
    component_map: list
    bag_offsets: list = field(default_factory=list)

    @property
    def model(self) -> MinorModel:
        """Model of ``h`` in ``h_prime`` whose branch sets are the copy paths."""
        return MinorModel(self.h, self.h_prime, {x: frozenset(p) for x, p in self.copy_paths.items()})

    def h_prime_minus_F(self) -> Graph:
        fs = {tuple(sorted(e)) for e in self.F}
        return build_graph(self.h_prime.n, [e for e in self.h_prime.edges() if e not in fs])

    def violations(self) -> list:
        h, hp = self.h, self.h_prime
        out = []
        if not verify_model(self.model):
            out.append("copy paths do not form a model of h")
        if hp.n < h.n:
            out.append("h' is smaller than h")
        if hp.max_degree() > h.max_degree() + 2:
            out.append("max degree grew by more than 2")
        if len(self.F) != hp.n - h.n:
            out.append("|F| != v(h') - v(h)")
        rest = self.h_prime_minus_F()
        comp_of = {}
        for i, c in enumerate(component_masks(rest)):
            for v in bits(c):
                comp_of[v] = i
        for u, v in self.F:
            if comp_of[u] == comp_of[v]:
                out.append(f"F-edge ({u}, {v}) inside one component")
        for entry in self.component_map:
            verts, copies = entry["vertices"], entry["copies"]
            pairs = [(i, j) for i in range(len(verts)) for j in range(i + 1, len(verts))]
            if any(rest.has_edge(verts[i], verts[j]) != h.has_edge(copies[i], copies[j]) for i, j in pairs):
                out.append("component is not a copy of an induced subgraph of h")
        return out


def expand_for_component_size(h: Graph, decomposition: Decomposition) -> ExpansionResult:
    """Replace each vertex by a path of its copies, one copy per bag containing it.

    Isolated vertices of ``h`` are set aside and appended as isolated vertices.
    Copies are numbered bag by bag; copy paths follow bag order.
    """
    problems = [p for p in decomposition.violations(h) if "C =" not in p]
    if problems:
        raise InvalidDecomposition("; ".join(problems))
    isolated = [v for v in range(h.n) if h.adj[v] == 0]
    iso_mask = mask_of(isolated)
    copies_of: dict = {x: [] for x in range(h.n)}
    origin = []
    edges = []
    offsets = []
    component_map = []
    for bag in decomposition.bags:
        members = [v for v in sorted(bag) if not iso_mask >> v & 1]
        if not members:
            continue
        base = len(origin)
        offsets.append(base)
        local = {v: base + i for i, v in enumerate(members)}
        for v in members:
            origin.append(v)
            copies_of[v].append(local[v])
        bm = mask_of(members)
        for v in members:
            for w in bits(h.adj[v] & bm):
                if v < w:
                    edges.append((local[v], local[w]))
        sub, old = induced_mask(h, bm)
        for c in component_masks(sub):
            vs = [local[old[i]] for i in bits(c)]
            component_map.append({"vertices": vs, "copies": [old[i] for i in bits(c)]})
    for v in isolated:
        copies_of[v].append(len(origin))
        component_map.append({"vertices": [len(origin)], "copies": [v]})
        origin.append(v)
    missing = [x for x in range(h.n) if not copies_of[x]]
    if missing:
        raise InvalidDecomposition(f"vertices {missing} lie in no bag")
    F = []
    for x in range(h.n):
        path = copies_of[x]
        F.extend(zip(path, path[1:]))
    hp = build_graph(len(origin), edges + F, f"{h.label}'" if h.label else "")
    res = ExpansionResult(h, hp, [tuple(e) for e in F], copies_of, component_map, offsets)
    problems = res.violations()
    if problems:
        raise InvalidDecomposition("; ".join(problems))
    return res
