"""Subgraph embeddings: the Hall-matching embedding of bounded-degree
bipartite graphs into near-complete hosts, greedy forest embedding, and
greedy packing of pattern components.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from .errors import HallFailure, NotBipartite, PreconditionViolated, StuckNoUnusedNeighbour
from .graph import Graph, bits, component_masks, induced_mask, is_homomorphism, mask_of, two_colouring

__all__ = [
    "Bipartition",
    "HallTrace",
    "PackResult",
    "bipartite_matching",
    "greedy_forest_embed",
    "hall_embed",
    "min_B_bipartition",
    "pack_components",
]


def bipartite_matching(left: Iterable, options: dict) -> dict:
    """Maximum matching by augmenting paths; ``options[x]`` lists allowed partners.

    Returns ``{left: right}``. Deterministic: options are tried in given order.
    """
    match_right: dict = {}

    def augment(x, seen) -> bool:
        for y in options.get(x, ()):
            if y in seen:
                continue
            seen.add(y)
            if y not in match_right or augment(match_right[y], seen):
                match_right[y] = x
                return True
        return False

    for x in left:
        augment(x, set())
    return {x: y for y, x in match_right.items()}


# ------------------------------------------------------------ bipartition


@dataclass(frozen=True)
class Bipartition:
    A: frozenset
    B: frozenset


def min_B_bipartition(h: Graph) -> Bipartition:
    """Bipartition with ``|A| <= |B|`` and ``|B|`` least.

    Components are flipped independently; an exact subset-sum table picks the
    largest feasible ``|A|``, and components are then fixed in order of least
    vertex, keeping the least vertex in ``A`` whenever that stays optimal.
    """
    colour = two_colouring(h)
    if colour is None:
        raise NotBipartite("graph is not bipartite")
    comps = component_masks(h)
    sides = []
    for c in comps:
        zero = mask_of(v for v in bits(c) if colour[v] == colour[(c & -c).bit_length() - 1])
        sides.append((zero, c & ~zero))
    target_cap = h.n // 2
    # reach[i] = achievable |A| contributions from components i..end
    reach = [set() for _ in range(len(comps) + 1)]
    reach[-1] = {0}
    for i in range(len(comps) - 1, -1, -1):
        a0, a1 = sides[i][0].bit_count(), sides[i][1].bit_count()
        reach[i] = {s + a0 for s in reach[i + 1]} | {s + a1 for s in reach[i + 1]}
    goal = max(s for s in reach[0] if s <= target_cap)
    a = 0
    left = goal
    for i, (s0, s1) in enumerate(sides):
        if left - s0.bit_count() in reach[i + 1]:
            a |= s0
            left -= s0.bit_count()
        else:
            a |= s1
            left -= s1.bit_count()
    b = h.vertex_mask & ~a
    return Bipartition(frozenset(bits(a)), frozenset(bits(b)))


# ----------------------------------------------------------- Hall embedding


@dataclass
class HallTrace:
    X0: frozenset
    X_prime: frozenset
    bipartition: Bipartition
    A0: tuple
    Y_sets: dict
    phi: dict


def _hall_preconditions(h: Graph, delta: int, g: Graph, xm: int) -> None:
    vh = h.n
    if delta < 1:
        raise PreconditionViolated("Delta must be at least 1")
    if h.max_degree() > delta:
        raise PreconditionViolated(f"max degree {h.max_degree()} exceeds Delta={delta}")
    if xm & ~g.vertex_mask or (g.n and xm == g.vertex_mask):
        raise PreconditionViolated("X must be a proper subset of V(G)")
    for v in range(g.n):
        if not xm >> v & 1 and g.degree(v) < vh - 1:
            raise PreconditionViolated(f"deg({v}) = {g.degree(v)} < v(H) - 1 = {vh - 1}")
    bound = (1 + Fraction(1, 4 * delta * (delta + 1))) * vh - 1
    if g.n > bound:
        raise PreconditionViolated(f"v(G) = {g.n} > (1 + 1/(4D(D+1))) v(H) - 1 = {float(bound):.4g}")
    xbound = Fraction(vh, (delta + 1) * (delta * delta + 1))
    if xm.bit_count() > xbound:
        raise PreconditionViolated(f"|X| = {xm.bit_count()} > v(H)/((D+1)(D^2+1)) = {float(xbound):.4g}")


def hall_embed(h: Graph, delta: int, g: Graph, X: Iterable[int] = (), trace: bool = False):
    """Embed bipartite ``h`` (max degree ``delta``) into ``g`` avoiding a deficient part of ``X``.

    Returns the injective homomorphism as ``{h-vertex: g-vertex}``, or
    ``(phi, HallTrace)`` when ``trace`` is set.
    """
    if two_colouring(h) is None:
        raise NotBipartite("pattern is not bipartite")
    xm = mask_of(X)
    _hall_preconditions(h, delta, g, xm)
    ym = g.vertex_mask & ~xm
    xs = list(bits(xm))

    # largest deficient subset of X, lexicographically least among those
    x0 = ()
    for size in range(len(xs), 0, -1):
        for sub in combinations(xs, size):
            if (g.neighborhood(mask_of(sub)) & ym).bit_count() < delta * size:
                x0 = sub
                break
        if x0:
            break
    x0m = mask_of(x0)
    xprime = [x for x in xs if not x0m >> x & 1]

    part = min_B_bipartition(h)
    A = sorted(part.A)
    B = sorted(part.B)

    a0 = []
    blocked = 0
    for v in A:
        if len(a0) == len(xprime):
            break
        if h.adj[v] & blocked:
            continue
        a0.append(v)
        blocked |= h.adj[v]
    if len(a0) < len(xprime):
        raise HallFailure("could not choose A0 with pairwise disjoint neighbourhoods")
    phi = dict(zip(a0, xprime))

    # Delta disjoint private neighbours in Y for each vertex of X'
    copies = [(x, i) for x in xprime for i in range(delta)]
    opts = {(x, i): list(bits(g.adj[x] & ym)) for x, i in copies}
    m = bipartite_matching(copies, opts)
    if len(m) < len(copies):
        raise HallFailure("X' has no system of Delta private neighbours")
    ysets = {x: sorted(m[(x, i)] for i in range(delta)) for x in xprime}

    used = 0
    for v in a0:
        slots = iter(ysets[phi[v]])
        for w in bits(h.adj[v]):
            phi[w] = next(slots)
            used |= 1 << phi[w]
    reserved = 0
    for ys in ysets.values():
        reserved |= mask_of(ys)
    free = ym & ~used
    for w in B:
        if w in phi:
            continue
        if not free:
            raise HallFailure("ran out of vertices for B")
        y = (free & -free).bit_length() - 1
        phi[w] = y
        used |= 1 << y
        free &= ~(1 << y)

    yprime = ym & ~used
    aprime = [v for v in A if v not in phi]
    cands = {}
    for v in aprime:
        c = yprime
        for w in bits(h.adj[v]):
            c &= g.adj[phi[w]]
        cands[v] = list(bits(c))
    sdr = bipartite_matching(aprime, cands)
    if len(sdr) < len(aprime):
        raise HallFailure("Hall condition failed for A'")
    phi.update(sdr)
    phi = dict(sorted(phi.items()))
    if not is_homomorphism(h, g, phi) or any(x0m >> y & 1 for y in phi.values()):
        raise HallFailure("constructed map is not an embedding into G - X0")
    if trace:
        return phi, HallTrace(frozenset(x0), frozenset(xprime), part, tuple(a0), ysets, phi)
    return phi


# ------------------------------------------------------------------ forests


def greedy_forest_embed(f: Graph, g: Graph, forbidden: Iterable[int] = ()) -> dict:
    """Embed a forest greedily, component by component, in BFS order.

    Each root takes the lowest unused host vertex; every other vertex takes the
    lowest unused neighbour of its parent's image. No degree condition is
    checked; a dead end raises :class:`StuckNoUnusedNeighbour`.
    """
    if f.e != f.n - len(component_masks(f)):
        raise PreconditionViolated("pattern is not a forest")
    used = mask_of(forbidden)
    phi = {}
    for comp in component_masks(f):
        root = (comp & -comp).bit_length() - 1
        free = g.vertex_mask & ~used
        if not free:
            raise StuckNoUnusedNeighbour(f"no unused host vertex for root {root}")
        phi[root] = (free & -free).bit_length() - 1
        used |= 1 << phi[root]
        queue = [root]
        seen = 1 << root
        while queue:
            x = queue.pop(0)
            for y in bits(f.adj[x] & ~seen):
                seen |= 1 << y
                opts = g.adj[phi[x]] & ~used
                if not opts:
                    raise StuckNoUnusedNeighbour(f"image of {x} has no unused neighbour for {y}")
                phi[y] = (opts & -opts).bit_length() - 1
                used |= 1 << phi[y]
                queue.append(y)
    phi = dict(sorted(phi.items()))
    assert is_homomorphism(f, g, phi)
    return phi


# ------------------------------------------------------------------ packing


@dataclass
class PackResult:
    G0: Graph
    G0_vertices: list
    H0: Graph
    H0_vertices: list
    embedding: dict
    packed: list

    @property
    def size(self) -> int:
        return self.G0.n


def pack_components(h: Graph, g: Graph, size_cap: int) -> PackResult:
    """Greedy maximal packing of components of ``h`` into ``g`` as disjoint subgraphs.

    Components are tried in order of least vertex; passes repeat until no
    remaining component fits within ``size_cap`` host vertices.
    """
    from .models import find_subgraph_iso

    comps = component_masks(h)
    pending = list(range(len(comps)))
    packed = []
    used = 0
    phi = {}
    progress = True
    while progress:
        progress = False
        for i in list(pending):
            c = comps[i]
            if used.bit_count() + c.bit_count() > size_cap:
                continue
            sub, old = induced_mask(h, c)
            emb = find_subgraph_iso(sub, g, forbidden=used)
            if emb is None:
                continue
            for a, b in emb.items():
                phi[old[a]] = b
                used |= 1 << b
            packed.append(i)
            pending.remove(i)
            progress = True
    hmask = mask_of(phi)
    h0, h0_old = induced_mask(h, hmask)
    g0, g0_old = induced_mask(g, used)
    phi = dict(sorted(phi.items()))
    assert is_homomorphism(h0, g, {i: phi[v] for i, v in enumerate(h0_old)})
    return PackResult(g0, g0_old, h0, h0_old, phi, sorted(packed))
