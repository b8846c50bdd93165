from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given

from minorforge import generators as gen
from minorforge.canon import canonical_form, is_isomorphic
from minorforge.errors import NotAnEdge, OutOfRange, SelfLoop
from minorforge.graph import (
    build_graph,
    component_masks,
    contract_edge,
    degeneracy,
    delete_vertices,
    density,
    girth,
    stats,
    subgraph_induced,
)
from minorforge.io import from_graph6, to_graph6

from conftest import graphs


def to_nx(g):
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges())
    return out


def test_build_triangle_null_and_dedup():
    assert is_isomorphic(build_graph(3, [(0, 1), (1, 2), (0, 2)]), gen.complete(3))
    null = build_graph(0, [])
    assert null.n == 0 and null.e == 0 and density(null) is None
    assert build_graph(4, [(0, 1), (0, 1), (2, 3)]).e == 2


def test_build_rejects_bad_input():
    with pytest.raises(OutOfRange):
        build_graph(2, [(0, 2)])
    with pytest.raises(SelfLoop):
        build_graph(2, [(1, 1)])


def test_stats_examples():
    s = stats(gen.complete(5))
    assert (s.density, s.min_degree, s.max_degree, s.degeneracy) == (2, 4, 4, 4)
    p = stats(gen.petersen())
    assert (p.v, p.e, p.density, p.degeneracy) == (10, 15, Fraction(3, 2), 3)
    for n in range(2, 9):
        assert degeneracy(gen.path(n)) == 1 and degeneracy(gen.star(n)) == 1


def test_generator_examples():
    g = gen.complete_multipartite([3, 3, 3])
    assert (g.n, g.min_degree(), g.e) == (9, 6, 27)
    assert is_isomorphic(gen.complement(gen.cycle(5)), gen.cycle(5))
    h = gen.regular_high_girth(3, 4, 14, seed=1)
    assert h.n == 14 and set(h.degrees()) == {3} and girth(h) > 4


def test_contract_and_induced_examples():
    p3 = gen.path(3)
    c, _ = contract_edge(p3, 0, 1)
    assert is_isomorphic(c, gen.path(2))
    sub, old = subgraph_induced(gen.complete(5), [1, 3, 4])
    assert is_isomorphic(sub, gen.complete(3)) and old == [1, 3, 4]
    for u, v in gen.cycle(4).edges():
        assert is_isomorphic(contract_edge(gen.cycle(4), u, v)[0], gen.cycle(3))
    with pytest.raises(NotAnEdge):
        contract_edge(gen.path(3), 0, 2)


@given(graphs(max_n=12))
def test_complement_involution(g):
    assert gen.complement(gen.complement(g)) == g


@given(graphs(min_n=1, max_n=10))
def test_density_at_least_half_min_degree(g):
    assert density(g) >= Fraction(g.min_degree(), 2)


@given(graphs(min_n=2, max_n=9))
def test_contraction_shrinks(g):
    for u, v in g.edges()[:4]:
        c, idmap = contract_edge(g, u, v)
        assert c.n == g.n - 1 and c.e <= g.e - 1
        assert idmap[u] == idmap[v]


@given(graphs(max_n=10))
def test_stats_match_networkx(g):
    s = stats(g)
    ng = to_nx(g)
    assert s.v == ng.number_of_nodes() and s.e == ng.number_of_edges()
    if g.n:
        assert s.degeneracy == max(nx.core_number(ng).values())
        assert len(component_masks(g)) == nx.number_connected_components(ng)
    assert s.is_bipartite == nx.is_bipartite(ng)
    cycles = nx.minimum_cycle_basis(ng)
    assert girth(g) == (min(len(c) for c in cycles) if cycles else None)


@given(graphs(max_n=9), graphs(max_n=9))
def test_canonical_form_matches_networkx_isomorphism(a, b):
    assert (canonical_form(a) == canonical_form(b)) == nx.is_isomorphic(to_nx(a), to_nx(b))


@given(graphs(max_n=70))
def test_graph6_roundtrip(g):
    assert from_graph6(to_graph6(g)) == g
    assert to_graph6(g) == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


@given(graphs(max_n=10))
def test_delete_vertices_matches_induced(g):
    drop = list(range(0, g.n, 3))
    a, old = delete_vertices(g, drop)
    assert old == [v for v in range(g.n) if v not in drop]
    assert all(a.has_edge(i, j) == g.has_edge(old[i], old[j]) for i in range(a.n) for j in range(a.n) if i != j)
