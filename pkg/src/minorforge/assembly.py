"""Edge extensions, rooted linkage, and assembling a minor from pieces.

The assembler routes one path per cross edge between host subgraphs with a
disjoint-paths computation, re-links those paths inside the first host,
solves one rooted model per host for the piece extended by path stubs, and
finally reconnects each cross edge through the stubs' branch sets.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Iterator, Optional, Sequence

from .canon import canonical_form
from .config import get_config
from .errors import (
    BudgetExceeded,
    DensityPreconditionFailed,
    LinkageNotFound,
    PreconditionViolated,
)
from .graph import Graph, bits, build_graph, component_masks, induced_mask, mask_of
from .models import (
    MinorModel,
    extend_model_with_paths,
    find_rooted_model,
    make_model,
    test_minor,
    verify_model,
)

__all__ = [
    "AssemblyResult",
    "EdgeExtension",
    "LinkCheck",
    "assemble_minor_from_pieces",
    "check_corollary_bound",
    "enumerate_k_extension_steps",
    "enumerate_k_extensions",
    "extension_extremal_embed",
    "is_H_linked",
    "pieces_pipeline",
]


# ------------------------------------------------------------ extensions


@dataclass(frozen=True)
class EdgeExtension:
    """``base`` plus simple extension steps.

    A step is ``("attach", to)`` -- one new vertex, joined to ``to`` unless
    ``to`` is ``None`` -- or ``("pair",)`` -- two new vertices joined by an edge.
    New vertices are numbered after the existing ones, in step order.
    """

    base: Graph
    steps: tuple = ()

    def apply(self) -> Graph:
        n = self.base.n
        edges = list(self.base.edges())
        for step in self.steps:
            if step[0] == "attach":
                to = step[1]
                if to is not None:
                    if not 0 <= to < n:
                        raise ValueError(f"attach target {to} does not exist yet")
                    edges.append((to, n))
                n += 1
            elif step[0] == "pair":
                edges.append((n, n + 1))
                n += 2
            else:
                raise ValueError(f"unknown step {step!r}")
        return build_graph(n, edges)

    def new_vertices(self) -> list:
        return list(range(self.base.n, self.apply().n))

    def attachment_points(self) -> list:
        """Base vertices that received an edge from a step."""
        return sorted({s[1] for s in self.steps if s[0] == "attach" and s[1] is not None and s[1] < self.base.n})


def _simple_steps(n: int) -> list:
    return [("attach", None)] + [("attach", v) for v in range(n)] + [("pair",)]


def enumerate_k_extension_steps(h: Graph, k: int, cap: int = 10_000) -> Iterator[EdgeExtension]:
    """All extensions by at most ``k`` simple steps, one per isomorphism class."""
    if k < 0:
        raise ValueError("k must be non-negative")
    seen = set()
    frontier = [EdgeExtension(h, ())]
    emitted = 0
    for level in range(k + 1):
        nxt = []
        for ext in frontier:
            g = ext.apply()
            key = canonical_form(g)
            if key in seen:
                continue
            seen.add(key)
            emitted += 1
            if emitted > cap:
                raise BudgetExceeded(f"more than {cap} extensions")
            yield ext
            if level < k:
                nxt.extend(EdgeExtension(h, ext.steps + (s,)) for s in _simple_steps(g.n))
        frontier = nxt


def enumerate_k_extensions(h: Graph, k: int, cap: int = 10_000) -> Iterator[Graph]:
    for ext in enumerate_k_extension_steps(h, k, cap):
        yield ext.apply()


# ---------------------------------------------------------------- linkage


@dataclass(frozen=True)
class LinkCheck:
    ok: bool
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.ok


def is_H_linked(g: Graph, h: Graph, cap: Optional[int] = None) -> LinkCheck:
    """Exhaustive check that every injection ``V(h) -> V(g)`` has a rooted model."""
    cap = get_config().linked_cap if cap is None else cap
    if h.n == 0:
        return LinkCheck(True)
    if g.n < h.n:
        return LinkCheck(False)
    if g.n > cap:
        raise BudgetExceeded(f"v(g) = {g.n} exceeds the linkage cap {cap}")
    for image in permutations(range(g.n), h.n):
        roots = dict(enumerate(image))
        if find_rooted_model(h, g, roots) is None:
            return LinkCheck(False, roots)
    return LinkCheck(True)


@dataclass(frozen=True)
class CorollaryCheck:
    holds: bool
    kappa: int
    bound: Fraction
    certifies: bool = False

    def __bool__(self) -> bool:
        return self.holds


def check_corollary_bound(g: Graph, h: Graph, C, bound=None) -> CorollaryCheck:
    """Advisory inequality ``kappa(g) >= C * b`` where ``b`` bounds ``c(h)`` from below.

    The default ``b`` is ``v(h)/2 - 1``, the density of the complete graph on
    ``v(h) - 1`` vertices. Passing the inequality with a lower bound does not
    certify linkedness.
    """
    from .separations import connectivity

    b = Fraction(h.n, 2) - 1 if bound is None else Fraction(bound)
    kappa = connectivity(g)
    return CorollaryCheck(kappa >= Fraction(C) * b, kappa, b)


def extension_extremal_embed(j: EdgeExtension, g: Graph) -> Optional[MinorModel]:
    """Model of an edge extension: embed the forest of new edges, then root ``h``.

    The new vertices ``A`` and their base attachment points ``B`` span a
    forest once edges inside ``B`` are dropped; it is embedded greedily, then a
    model of the base rooted at the images of ``B`` is found avoiding the
    images of ``A``. New vertices get singleton branch sets.
    """
    from .embedding import greedy_forest_embed

    jg = j.apply()
    if g.n < jg.n:
        return None
    h = j.base
    if not j.steps:
        return test_minor(h, g)
    A = list(range(h.n, jg.n))
    B = j.attachment_points()
    verts = sorted(set(A) | set(B))
    pos = {v: i for i, v in enumerate(verts)}
    bset = set(B)
    forest_edges = [
        (pos[u], pos[v]) for u, v in jg.edges()
        if u in pos and v in pos and not (u in bset and v in bset)
    ]
    forest = build_graph(len(verts), forest_edges)
    emb = greedy_forest_embed(forest, g)
    phi = {v: emb[pos[v]] for v in verts}
    roots = {b: phi[b] for b in B}
    mu = find_rooted_model(h, g, roots, forbidden=[phi[a] for a in A])
    if mu is None:
        return None
    sets = dict(mu.branch_sets)
    for a in A:
        sets[a] = frozenset({phi[a]})
    model = make_model(jg, g, sets)
    assert verify_model(model)
    return model


# --------------------------------------------------------------- assembly


@dataclass
class AssemblyResult:
    model: MinorModel
    trace: dict = field(default_factory=dict)


def _bfs_path(g: Graph, sources: int, targets: int, allowed: int) -> Optional[list]:
    """Shortest path from ``sources`` to ``targets`` with internal vertices in ``allowed``."""
    parent = {}
    queue = deque()
    for s in bits(sources):
        parent[s] = None
        queue.append(s)
    while queue:
        x = queue.popleft()
        if targets >> x & 1:
            p = [x]
            while parent[p[-1]] is not None:
                p.append(parent[p[-1]])
            return p[::-1]
        if parent[x] is not None and not allowed >> x & 1:
            continue
        for y in bits(g.adj[x]):
            if y not in parent and (allowed >> y & 1 or targets >> y & 1):
                parent[y] = x
                queue.append(y)
    return None


def _shortcut(g: Graph, path: list) -> list:
    """Shortest path between the ends of ``path`` inside ``G[V(path)]``."""
    if len(path) <= 2:
        return list(path)
    p = _bfs_path(g, 1 << path[0], 1 << path[-1], mask_of(path[1:-1]))
    assert p is not None
    return p


def _host_index(hosts: list, v: int) -> Optional[int]:
    for i, hm in enumerate(hosts):
        if hm >> v & 1:
            return i
    return None


def assemble_minor_from_pieces(
    h: Graph,
    F: Sequence,
    pieces: Sequence[Iterable[int]],
    G: Graph,
    hosts: Sequence[Iterable[int]],
    check_density: bool = True,
) -> AssemblyResult:
    """Build a model of ``h`` in ``G`` from rooted models of the pieces in the hosts.

    ``pieces[i]`` lists the vertices of ``h`` forming a union of components
    of ``h - F``; ``hosts[i]`` lists the vertices of the host subgraph
    ``G[hosts[i]]``. Raises :class:`LinkageNotFound` when some rooted model
    or linkage does not exist; never returns an unverified model.
    """
    from .separations import is_dense_pair, menger_paths

    F = [tuple(f) for f in F]
    piece_masks = [mask_of(p) for p in pieces]
    host_masks = [mask_of(hs) for hs in hosts]
    k = len(piece_masks)
    if len(host_masks) != k:
        raise ValueError("need one host per piece")
    _check_spec(h, F, piece_masks, host_masks, G)
    piece_of = {v: i for i, pm in enumerate(piece_masks) for v in bits(pm)}
    Z = 0
    for hm in host_masks:
        Z |= hm
    trace: dict = {"F": F}

    if F and check_density:
        X = [v for v in range(G.n) if not Z >> v & 1]
        chk = is_dense_pair(G, X, 0, 2 * len(F))
        if not chk:
            raise DensityPreconditionFailed(
                f"(G, V(G) minus the hosts) is not {2 * len(F)}-dense", separation=chk.separation
            )

    # path system P_f between the hosts of the ends of each cross edge
    P = {}
    if F:
        P = _route_cross_edges(G, F, piece_of, host_masks, trace, menger_paths)

    # auxiliary index graphs and index sequences
    stubs = {}  # (i, f) -> dict(p=root or None, q=root or None, kind)
    seq = {}
    for f in F:
        u, v = f
        i, j = piece_of[u], piece_of[v]
        path = P[f]
        hits = [(t, _host_index(host_masks, x)) for t, x in enumerate(path) if Z >> x & 1]
        jedges = {}
        for (t1, a), (t2, b) in zip(hits, hits[1:]):
            if a != b:
                key = (min(a, b), max(a, b))
                if key not in jedges:
                    jedges[key] = (a, path[t1:t2 + 1])
        nbrs = {}
        for a, b in jedges:
            nbrs.setdefault(a, set()).add(b)
            nbrs.setdefault(b, set()).add(a)
        order = _bfs_indices(nbrs, i, j)
        if order is None:
            raise LinkageNotFound(f"hosts of {u} and {v} are not linked along the routed path")
        seq[f] = order
        trace.setdefault("J", {})[str(f)] = sorted(jedges)
        trace.setdefault("I", {})[str(f)] = order
        r_at, s_at = {}, {}
        sub_paths = []
        for a, b in zip(order, order[1:]):
            start, sp = jedges[(min(a, b), max(a, b))]
            if start != a:
                sp = sp[::-1]
            r_at[a] = sp[0]
            s_at[b] = sp[-1]
            sub_paths.append(sp)
        for t, idx in enumerate(order):
            stubs[(idx, f)] = {"r": r_at.get(idx), "s": s_at.get(idx), "first": t == 0, "last": t == len(order) - 1}

    # rooted models of the extended pieces
    mu_prime = {}
    stub_sets = {}
    trace["extensions"] = {}
    for i in range(k):
        hsub, hold = induced_mask(_minus_F(h, F), piece_masks[i])
        gsub, gold = induced_mask(G, host_masks[i])
        gpos = {x: t for t, x in enumerate(gold)}
        hpos = {x: t for t, x in enumerate(hold)}
        edges = list(hsub.edges())
        n = hsub.n
        roots = {}
        labels = {}
        for f in F:
            st = stubs.get((i, f))
            if st is None:
                continue
            u, v = f
            if st["first"]:
                edges.append((hpos[u], n))
                roots[n] = gpos[st["r"]]
                labels[("p", f)] = n
                n += 1
            if st["last"]:
                edges.append((hpos[v], n))
                roots[n] = gpos[st["s"]]
                labels[("q", f)] = n
                n += 1
            if not st["first"] and not st["last"]:
                if st["r"] != st["s"]:
                    edges.append((n, n + 1))
                    roots[n] = gpos[st["r"]]
                    roots[n + 1] = gpos[st["s"]]
                    labels[("p", f)] = n
                    labels[("q", f)] = n + 1
                    n += 2
                else:
                    roots[n] = gpos[st["r"]]
                    labels[("p", f)] = labels[("q", f)] = n
                    n += 1
        ext = build_graph(n, edges)
        trace["extensions"][i] = {"v": n, "edges": edges, "roots": {a: gold[b] for a, b in roots.items()}}
        if gsub.n < ext.n:
            raise LinkageNotFound(f"host {i} is smaller than its extended piece")
        mu = find_rooted_model(ext, gsub, roots)
        if mu is None:
            raise LinkageNotFound(f"no rooted model of the extended piece {i} in its host")
        for x in range(hsub.n):
            mu_prime[hold[x]] = frozenset(gold[y] for y in mu.branch_sets[x])
        for key, node in labels.items():
            stub_sets[(i,) + key] = frozenset(gold[y] for y in mu.branch_sets[node])
    trace["models"] = {v: sorted(s) for v, s in sorted(mu_prime.items())}

    base = make_model(_minus_F(h, F), G, mu_prime)
    assert verify_model(base)
    if not F:
        model = MinorModel(h, G, dict(base.branch_sets))
        assert verify_model(model)
        return AssemblyResult(model, trace)

    # reconnect each cross edge through its stubs and the outside part of its path
    Q = {}
    used = 0
    for s in mu_prime.values():
        used |= mask_of(s)
    for f in F:
        u, v = f
        order = seq[f]
        allowed = mask_of(x for x in P[f] if not Z >> x & 1)
        for idx in order:
            for kind in ("p", "q"):
                s = stub_sets.get((idx, kind, f))
                if s is not None:
                    allowed |= mask_of(s)
        path = _bfs_path(G, mask_of(mu_prime[u]), mask_of(mu_prime[v]), allowed & ~used)
        if path is None:
            raise LinkageNotFound(f"could not reconnect cross edge {f}")
        Q[f] = path
    trace["Q"] = {str(f): p for f, p in Q.items()}
    model = extend_model_with_paths(base, F, Q, pattern=h)
    assert verify_model(model)
    return AssemblyResult(model, trace)


def _minus_F(h: Graph, F: list) -> Graph:
    fs = {tuple(sorted(f)) for f in F}
    return build_graph(h.n, [e for e in h.edges() if e not in fs], h.label)


def _check_spec(h: Graph, F: list, piece_masks: list, host_masks: list, G: Graph) -> None:
    for u, v in F:
        if not h.has_edge(u, v):
            raise PreconditionViolated(f"({u}, {v}) is not an edge of h")
    seen = 0
    for pm in piece_masks:
        if pm & seen:
            raise PreconditionViolated("pieces overlap")
        seen |= pm
    if seen != h.vertex_mask:
        raise PreconditionViolated("pieces do not cover V(h)")
    piece_of = {v: i for i, pm in enumerate(piece_masks) for v in bits(pm)}
    rest = _minus_F(h, F)
    for pm in piece_masks:
        for c in component_masks(rest, pm):
            if rest.neighborhood(c) & ~c:
                raise PreconditionViolated("a piece is not a union of components of h - F")
    for u, v in F:
        if piece_of[u] == piece_of[v]:
            raise PreconditionViolated(f"F-edge ({u}, {v}) has both ends in one piece")
    seen = 0
    for hm in host_masks:
        if hm & seen:
            raise PreconditionViolated("hosts overlap")
        if hm & ~G.vertex_mask:
            raise PreconditionViolated("host vertex outside G")
        seen |= hm


def _bfs_indices(nbrs: dict, i: int, j: int) -> Optional[list]:
    parent = {i: None}
    queue = deque([i])
    while queue:
        x = queue.popleft()
        if x == j:
            out = [x]
            while parent[out[-1]] is not None:
                out.append(parent[out[-1]])
            return out[::-1]
        for y in sorted(nbrs.get(x, ())):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return None


def _route_cross_edges(G: Graph, F: list, piece_of: dict, host_masks: list, trace: dict, menger_paths) -> dict:
    g1 = host_masks[0]
    m = len(F)
    if g1.bit_count() < 2 * m:
        raise LinkageNotFound(f"first host has fewer than {2 * m} vertices")
    U = list(bits(g1))[: 2 * m]
    taken = 0
    r, s = {}, {}
    for f in F:
        u, v = f
        for end, store in ((u, r), (v, s)):
            avail = host_masks[piece_of[end]] & ~taken
            if not avail:
                raise LinkageNotFound(f"host of {end} has no free vertex for a path end")
            x = (avail & -avail).bit_length() - 1
            store[f] = x
            taken |= 1 << x
    W = [r[f] for f in F] + [s[f] for f in F]
    trace["U"], trace["W"] = U, sorted(W)
    res = menger_paths(G, U, W, 2 * m)
    if not res.found_paths:
        raise DensityPreconditionFailed("too few disjoint paths from the first host", separation=res.separation)
    by_end = {p[-1]: p for p in res.paths}
    trace["menger_paths"] = res.paths

    def to_host1(p: list) -> list:
        last = max(t for t, x in enumerate(p) if g1 >> x & 1)
        tail = p[last:]
        inner_ok = G.vertex_mask & ~g1
        if len(tail) > 2:
            q = _bfs_path(G, 1 << tail[0], 1 << tail[-1], mask_of(tail[1:-1]) & inner_ok)
            tail = q if q is not None else tail
        return tail

    R = {f: to_host1(by_end[r[f]]) for f in F}
    S = {f: to_host1(by_end[s[f]]) for f in F}

    # linkage inside the first host joining the ends R_f(0) and S_f(0)
    g1sub, g1old = induced_mask(G, g1)
    pos = {x: t for t, x in enumerate(g1old)}
    pattern = build_graph(2 * m, [(2 * t, 2 * t + 1) for t in range(m)])
    roots = {}
    for t, f in enumerate(F):
        roots[2 * t] = pos[R[f][0]]
        roots[2 * t + 1] = pos[S[f][0]]
    link = find_rooted_model(pattern, g1sub, roots)
    if link is None:
        raise LinkageNotFound("first host does not link the routed path ends")
    P = {}
    for t, f in enumerate(F):
        region = mask_of(g1old[y] for y in link.branch_sets[2 * t] | link.branch_sets[2 * t + 1])
        T = _bfs_path(G, 1 << R[f][0], 1 << S[f][0], region)
        full = R[f][::-1] + T[1:] + S[f][1:]
        assert len(set(full)) == len(full)
        i, j = piece_of[f[0]], piece_of[f[1]]
        hi, hj = host_masks[i], host_masks[j]
        a = max(t2 for t2, x in enumerate(full) if hi >> x & 1)
        b = next(t2 for t2 in range(a, len(full)) if hj >> full[t2] & 1)
        P[f] = full[a:b + 1]
    trace["P"] = {str(f): p for f, p in P.items()}
    return P


def pieces_pipeline(h: Graph, F: Sequence, pieces: Sequence, G: Graph, hosts: Sequence) -> AssemblyResult:
    """Shrink each host to a highly connected subgraph, then assemble.

    Shrinking hosts only enlarges the outside set, so the density condition
    is re-checked on the smaller hosts before assembling.
    """
    from .density import mader_subgraph_with_ids

    new_hosts = []
    for hs in hosts:
        hm = mask_of(hs)
        sub, old = induced_mask(G, hm)
        if sub.e == 0:
            new_hosts.append(sorted(hs))
            continue
        _, keep = mader_subgraph_with_ids(sub)
        new_hosts.append(sorted(old[x] for x in keep))
    res = assemble_minor_from_pieces(h, F, pieces, G, new_hosts)
    res.trace["hosts"] = new_hosts
    return res
