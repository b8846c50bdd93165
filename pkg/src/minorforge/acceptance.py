"""The acceptance battery: eleven exact checks on small instances.

Each check returns a :class:`CriterionResult`; ``quick`` shrinks corpus sizes
for a smoke run. Wall-clock limits are part of every check.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator, Optional

from .canon import is_isomorphic
from .constructions import bipartite_expand, construct_sk7_blocker, construct_sktt_blocker, ha_falsify
from .decomposition import bounded_decomposition, expand_for_component_size
from .density import extract_pieces, mader_subgraph
from .embedding import hall_embed
from .errors import DensityPreconditionFailed, NoSeparatorSmallEnough, PreconditionViolated
from .generators import (
    complete,
    complete_multipartite,
    cycle,
    disjoint_union,
    friendship,
    gnp,
    path,
    petersen,
    random_graph_corpus,
)
from .graph import Graph, bits, build_graph, component_masks, density, is_bipartite, is_homomorphism, mask_of
from .models import test_minor, test_minor_oracle2, verify_model
from .separations import connectivity, extract_dense_pair, is_dense_pair, menger_paths

__all__ = ["CRITERIA", "CriterionResult", "run_acceptance", "brute_force_cut"]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: Optional[float] = None

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.1f}s)"


# ------------------------------------------------------------------ oracles


def brute_force_cut(g: Graph, U, W) -> int:
    """Least ``|S|`` such that ``G - S`` has no path from ``U - S`` to ``W - S``.

    For distinct single terminals ``u``, ``w`` the cut must avoid both and an
    edge ``uw`` costs one extra, matching internally disjoint paths.
    """
    um, wm = mask_of(U), mask_of(W)
    pair = um.bit_count() == 1 and wm.bit_count() == 1 and um != wm
    if pair:
        u, w = um.bit_length() - 1, wm.bit_length() - 1
        direct = int(g.has_edge(u, w))
        g = build_graph(g.n, [e for e in g.edges() if set(e) != {u, w}])
    for size in range(g.n + 1):
        for s in combinations(range(g.n), size):
            sm = mask_of(s)
            if pair and sm & (um | wm):
                continue
            rest = g.vertex_mask & ~sm
            if not any(c & um and c & wm for c in component_masks(g, rest)):
                return size + direct if pair else size
    return g.n


def _max_menger(g: Graph, U, W) -> int:
    ell = 0
    while ell < g.n + 1 and menger_paths(g, U, W, ell + 1).found_paths:
        ell += 1
    return ell


# ----------------------------------------------------------------- criteria


def c1_oracle_equivalence(quick: bool) -> tuple:
    rng = random.Random(1)
    pairs = 200 if quick else 1000
    bad = []
    found = 0
    for i in range(pairs):
        ng = rng.randint(1, 8)
        nh = rng.randint(1, ng)
        g = gnp(ng, rng.choice([0.3, 0.5, 0.7, 0.9]), seed=rng.randrange(1 << 30))
        h = gnp(nh, rng.choice([0.2, 0.4, 0.6]), seed=rng.randrange(1 << 30))
        m = test_minor(h, g)
        if m is not None:
            found += 1
            if not verify_model(m):
                bad.append(("invalid model", i))
        if (m is not None) != test_minor_oracle2(h, g):
            bad.append(("disagree", i))
    fixtures = [
        (complete(5), petersen(), True),
        (complete(6), petersen(), False),
        (cycle(4), friendship(3), False),
    ]
    for h, g, want in fixtures:
        a, b = test_minor(h, g) is not None, test_minor_oracle2(h, g)
        if a != want or b != want:
            bad.append(("fixture", h.label, g.label))
    ok = not bad
    return ok, f"{pairs} pairs ({found} found), 3 fixtures, mismatches={bad[:3]}"


def c2_certificates(quick: bool) -> tuple:
    k333 = construct_sk7_blocker(1)
    f3 = construct_sktt_blocker(1, 2, 3)
    checks = {
        "K333 iso": is_isomorphic(k333, complete_multipartite([3, 3, 3])),
        "K333 delta=6": k333.min_degree() == 6,
        "K333 no K7": test_minor(complete(7), k333) is None,
        "F3 iso": is_isomorphic(f3, friendship(3)),
        "F3 e=9": f3.e == 9 == math.comb(1, 2) + 1 * 3 * 2 + 3 * math.comb(2, 2),
        "F3 no C4": test_minor(cycle(4), f3) is None,
    }
    failed = [k for k, v in checks.items() if not v]
    return not failed, f"failed={failed}" if failed else "K333 and F3 certified"


def c3_dense_pairs(quick: bool) -> tuple:
    corpus = [g for g in random_graph_corpus(60 if quick else 200, (1, 12), seed=3)]
    bad = []
    for g in corpus:
        for k in (1, 2, 3):
            gp, X = extract_dense_pair(g, k)
            if len(X) > 2 * k or (len(X) < gp.n and not is_dense_pair(gp, X, g.min_degree(), k)):
                bad.append((g.label, k))
            elif len(X) == gp.n:
                bad.append((g.label, k, "X not proper"))
    return not bad, f"{len(corpus)} graphs x 3 values of k, failures={bad[:3]}"


def c4_expansion(quick: bool) -> tuple:
    corpus = random_graph_corpus(60 if quick else 150, (1, 11), seed=4)
    done = 0
    bad = []
    for g in corpus:
        for C in (3, 4, 5):
            try:
                dec = bounded_decomposition(g, C)
            except NoSeparatorSmallEnough:
                continue
            res = expand_for_component_size(g, dec)
            problems = res.violations()
            if len(res.F) != dec.excess:
                problems.append("|F| != excess")
            if any(len(b) > C for b in dec.bags):
                problems.append("bag too large")
            if problems:
                bad.append((g.label, C, problems))
            done += 1
    want = 30 if quick else 100
    ok = not bad and done >= want
    return ok, f"{done} (graph, C) instances checked, failures={bad[:2]}"


def c5_bipartite_expand(quick: bool) -> tuple:
    bad = []
    equal = []
    for h in (complete(3), complete(4), cycle(5), petersen()):
        for D in (3, 4, 5):
            r = bipartite_expand(h, D)
            bound = Fraction(4 * h.e, D - 2) + 2 * h.n
            if not is_bipartite(r.graph) or r.graph.max_degree() > D or r.graph.n > bound or not verify_model(r.model):
                bad.append((h.label, D))
            if r.graph.n == bound:
                equal.append(f"{h.label}/{D}")
    return not bad, f"12 instances, failures={bad}, equality cases={equal}"


def c6_mader(quick: bool) -> tuple:
    corpus = [g for g in random_graph_corpus(60 if quick else 200, (2, 12), seed=6) if g.e > 0]
    bad = []
    for g in corpus:
        sub = mader_subgraph(g)
        if connectivity(sub) < math.ceil(density(g) / 2):
            bad.append(g.label)
    return not bad, f"{len(corpus)} graphs, failures={bad[:3]}"


def c7_menger(quick: bool) -> tuple:
    rng = random.Random(7)
    count = 60 if quick else 200
    bad = []
    for i in range(count):
        n = rng.randint(2, 10)
        g = gnp(n, rng.choice([0.25, 0.4, 0.6]), seed=rng.randrange(1 << 30))
        U = rng.sample(range(n), rng.randint(1, max(1, n // 3)))
        W = rng.sample(range(n), rng.randint(1, max(1, n // 3)))
        if _max_menger(g, U, W) != brute_force_cut(g, U, W):
            bad.append(i)
    return not bad, f"{count} triples, mismatches={bad[:5]}"


def c8_pieces(quick: bool) -> tuple:
    hosts = [complete(40), gnp(40, 0.6, seed=8)]
    lines = []
    bad = []
    inconclusive = 0
    runs = 0
    eps = Fraction(1, 20)
    for g in hosts:
        D = g.min_degree()
        for K in (1, 2) if quick else (1, 2, 3):
            out = extract_pieces(g, D, K, eps=eps)
            runs += 1
            if out.tag == "inconclusive":
                inconclusive += 1
            for p in out.pieces:
                m = mask_of(p)
                e = sum((g.adj[v] & m).bit_count() for v in p) // 2
                if len(p) > D / eps or Fraction(e, len(p)) < eps * D:
                    bad.append((g.n, K, "piece bound"))
            if out.tag == "denser_minor":
                if not verify_model(out.model) or density(out.minor) < out.threshold:
                    bad.append((g.n, K, "denser minor"))
            lines.append(f"{out.tag}")
    return not bad, f"{runs} runs {lines}, inconclusive rate {inconclusive}/{runs}, failures={bad}"


def c9_assembly(quick: bool) -> tuple:
    from .assembly import assemble_minor_from_pieces

    k4 = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    edges = k4 + [(a + 4, b + 4) for a, b in k4] + [(i, i + 4) for i in range(4)]
    G = build_graph(8, edges, "2K4+matching")
    h = build_graph(4, [(0, 1), (2, 3), (1, 2)], "2K2+F")
    res = assemble_minor_from_pieces(h, [(1, 2)], [[0, 1], [2, 3]], G, [[0, 1, 2, 3], [4, 5, 6, 7]])
    ok1 = verify_model(res.model) and res.model.pattern == h
    G2 = build_graph(8, k4 + [(a + 4, b + 4) for a, b in k4] + [(0, 4)], "2K4+edge")
    sep_ok = False
    try:
        assemble_minor_from_pieces(h, [(1, 2)], [[0, 1], [2, 3]], G2, [[0, 1, 2, 3], [4, 5, 6, 7]])
    except DensityPreconditionFailed as exc:
        sep = exc.separation
        sep_ok = sep is not None and sep.is_valid(G2) and sep.order < 2
    return ok1 and sep_ok, f"model verified={ok1}, witnessing separation={sep_ok}"


def c10_falsify(quick: bool) -> tuple:
    n = 7 if quick else 8
    p3 = ha_falsify(path(3), n)
    k4 = ha_falsify(complete(4), n)
    k7 = ha_falsify(complete(7), 12, "constructions")
    k7_ok = k7 is not None and is_isomorphic(k7, complete_multipartite([3, 3, 3]))
    ok = p3 is None and k4 is None and k7_ok
    return ok, f"P3 up to {n}: {p3}, K4 up to {n}: {k4}, K7 constructions: {k7}"


def _hall_instances(quick: bool) -> Iterator[tuple]:
    rng = random.Random(11)
    for m in range(8, 13):
        h = disjoint_union([complete(2)] * m)
        vh = h.n
        top = math.floor((1 + Fraction(1, 8)) * vh - 1)
        xmax = vh // 4
        for trial in range(2 if quick else 6):
            n = rng.randint(vh, top)
            X = rng.sample(range(n), rng.randint(0, xmax))
            xm = mask_of(X)
            adj = [((1 << n) - 1) & ~(1 << v) for v in range(n)]
            slack = {v: n - 1 - (vh - 1) for v in range(n)}
            pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
            rng.shuffle(pairs)
            for a, b in pairs[: 3 * n]:
                if all(xm >> v & 1 or slack[v] > 0 for v in (a, b)):
                    adj[a] &= ~(1 << b)
                    adj[b] &= ~(1 << a)
                    slack[a] -= 1
                    slack[b] -= 1
            yield h, Graph(n, tuple(adj)), X


def c11_hall(quick: bool) -> tuple:
    count = 0
    bad = []
    for h, g, X in _hall_instances(quick):
        try:
            phi = hall_embed(h, 1, g, X)
        except PreconditionViolated:
            continue
        count += 1
        if not is_homomorphism(h, g, phi) or len(set(phi.values())) != h.n:
            bad.append((h.n, g.n, X))
    want = 10 if quick else 30
    return not bad and count >= want, f"{count} instances embedded, failures={bad[:2]}"


CRITERIA: list = [
    (1, "oracle equivalence", c1_oracle_equivalence, 300),
    (2, "tightness certificates", c2_certificates, 60),
    (3, "dense pair extraction", c3_dense_pairs, 300),
    (4, "bounded-piece expansion", c4_expansion, None),
    (5, "bipartite bounded-degree expansion", c5_bipartite_expand, None),
    (6, "highly connected subgraph", c6_mader, None),
    (7, "Menger duality", c7_menger, None),
    (8, "dense piece extraction contract", c8_pieces, 600),
    (9, "assembly from pieces", c9_assembly, 60),
    (10, "degree-forcing falsifier", c10_falsify, 900),
    (11, "Hall embedding", c11_hall, None),
]


def run_criterion(number: int, quick: bool = False) -> CriterionResult:
    _, title, fn, limit = CRITERIA[number - 1]
    t0 = time.perf_counter()
    ok, detail = fn(quick)
    secs = time.perf_counter() - t0
    if limit is not None and secs > limit:
        ok = False
        detail += f"; exceeded {limit}s"
    return CriterionResult(number, title, bool(ok), detail, secs, limit)


def run_acceptance(quick: bool = False, only=None, report: Optional[Callable] = None) -> list:
    out = []
    for number, *_ in CRITERIA:
        if only and number not in only:
            continue
        r = run_criterion(number, quick)
        if report:
            report(r)
        out.append(r)
    return out
