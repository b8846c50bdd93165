import random

import pytest
from hypothesis import given, strategies as st

from minorforge import generators as gen
from minorforge.acceptance import _hall_instances
from minorforge.errors import NotBipartite, PreconditionViolated, StuckNoUnusedNeighbour
from minorforge.graph import bits, build_graph, component_masks, induced_mask, is_homomorphism, two_colouring
from minorforge.embedding import (
    bipartite_matching,
    greedy_forest_embed,
    hall_embed,
    min_B_bipartition,
    pack_components,
)
from minorforge.models import find_subgraph_iso

from conftest import graphs


def test_min_B_bipartition_examples():
    p = min_B_bipartition(gen.cycle(6))
    assert len(p.A) == len(p.B) == 3
    p = min_B_bipartition(gen.disjoint_union([gen.star(3), gen.complete(2)]))
    assert (len(p.A), len(p.B)) == (2, 4)
    p = min_B_bipartition(gen.empty(5))
    assert (sorted(p.A), sorted(p.B)) == ([0, 1], [2, 3, 4])
    with pytest.raises(NotBipartite):
        min_B_bipartition(gen.cycle(5))


@given(graphs(max_n=10))
def test_min_B_bipartition_is_optimal(g):
    if two_colouring(g) is None:
        return
    p = min_B_bipartition(g)
    assert p.A | p.B == frozenset(range(g.n)) and not p.A & p.B
    assert len(p.A) <= len(p.B)
    assert not any((u in p.A) == (v in p.A) for u, v in g.edges())
    col = two_colouring(g)
    sizes = {0}
    for c in component_masks(g):
        vs = list(bits(c))
        a = sum(1 for v in vs if col[v] == col[vs[0]])
        sizes = {s + a for s in sizes} | {s + len(vs) - a for s in sizes}
    assert len(p.A) == max(s for s in sizes if s <= g.n // 2)


def test_hall_examples():
    h = gen.disjoint_union([gen.complete(2)] * 4)
    for X in ([0], []):
        phi, tr = hall_embed(h, 1, gen.complete(8), X, trace=True)
        assert is_homomorphism(h, gen.complete(8), phi)
    assert tr.X0 == frozenset() and tr.A0 == ()
    c8 = gen.cycle(8)
    g = gen.complement(build_graph(9, [(0, 1), (2, 3), (4, 5), (6, 7)]))
    with pytest.raises(PreconditionViolated, match="v\\(G\\)"):
        hall_embed(c8, 2, g)


def test_hall_rejects_bad_inputs():
    with pytest.raises(NotBipartite):
        hall_embed(gen.cycle(3), 2, gen.complete(3))
    with pytest.raises(PreconditionViolated, match="max degree"):
        hall_embed(gen.star(3), 1, gen.complete(4))
    g = build_graph(8, [(u, v) for u in range(8) for v in range(u + 1, 8) if (u, v) != (1, 2)])
    with pytest.raises(PreconditionViolated, match="deg"):
        hall_embed(gen.disjoint_union([gen.complete(2)] * 4), 1, g)


def test_hall_family_with_deficient_X():
    count = 0
    for h, g, X in _hall_instances(quick=False):
        try:
            phi, tr = hall_embed(h, 1, g, X, trace=True)
        except PreconditionViolated:
            continue
        count += 1
        assert is_homomorphism(h, g, phi)
        assert not set(phi.values()) & tr.X0
        # no two A0 vertices share a pattern neighbour
        nbrs = [set(h.neighbors(v)) for v in tr.A0]
        assert all(not a & b for i, a in enumerate(nbrs) for b in nbrs[i + 1:])
    assert count >= 30


def test_forest_examples():
    phi = greedy_forest_embed(gen.star(3), gen.complete(5))
    assert is_homomorphism(gen.star(3), gen.complete(5), phi)
    phi = greedy_forest_embed(gen.path(4), gen.cycle(4))
    assert sorted(phi.values()) == [0, 1, 2, 3]
    with pytest.raises(StuckNoUnusedNeighbour):
        greedy_forest_embed(gen.disjoint_union([gen.complete(2)] * 2), gen.complete(3))
    with pytest.raises(PreconditionViolated):
        greedy_forest_embed(gen.cycle(3), gen.complete(5))


@st.composite
def trees(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    return build_graph(n, [(p, i) for i, p in enumerate(parents, start=1)])


@given(trees(), st.integers(0, 4))
def test_forest_embeds_into_complete_host(t, extra):
    g = gen.complete(t.n + extra)
    phi = greedy_forest_embed(t, g, forbidden=range(extra))
    assert is_homomorphism(t, g, phi)
    assert min(phi.values()) >= extra


def test_pack_examples():
    h = gen.disjoint_union([gen.complete(3)] * 3)
    assert len(pack_components(h, gen.complete(9), 9).packed) == 3
    r = pack_components(h, gen.complete(9), 7)
    assert len(r.packed) == 2 and r.G0.n == r.H0.n == 6
    r = pack_components(gen.disjoint_union([gen.cycle(4)] * 2), gen.petersen(), 10)
    assert r.packed == [] and r.G0.n == 0


def test_pack_is_maximal():
    rng = random.Random(3)
    for _ in range(20):
        g = gen.gnp(9, 0.5, seed=rng.randrange(1 << 20))
        h = gen.disjoint_union([gen.path(2), gen.complete(3), gen.path(3), gen.cycle(4)])
        cap = rng.randint(3, 9)
        r = pack_components(h, g, cap)
        assert r.G0.n == r.H0.n <= cap
        assert sorted(r.G0_vertices) == sorted(r.embedding.values())
        comps = component_masks(h)
        for i, c in enumerate(comps):
            if i in r.packed or r.G0.n + c.bit_count() > cap:
                continue
            sub, _ = induced_mask(h, c)
            assert find_subgraph_iso(sub, g, forbidden=r.G0_vertices) is None


def test_bipartite_matching_is_maximum():
    opts = {0: [0, 1], 1: [0], 2: [1, 2], 3: [2]}
    m = bipartite_matching(range(4), opts)
    assert len(m) == 3 and len(set(m.values())) == 3
