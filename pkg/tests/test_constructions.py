import warnings
from fractions import Fraction
from math import comb

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from minorforge import generators as gen
from minorforge.canon import is_isomorphic
from minorforge.constructions import (
    RegimeWarning,
    bipartite_expand,
    certify_no_minor,
    construct_kst_blocker,
    construct_sk7_blocker,
    construct_sktt_blocker,
    ha_falsify,
    kst_parameters,
    small_graphs_min_degree,
)
from minorforge.errors import InfeasibleParameters
from minorforge.graph import build_graph, density, girth, is_bipartite
from minorforge.models import test_minor as minor_search, test_minor_oracle2 as minor_oracle2, verify_model


def test_kst_example_below_regime():
    with pytest.warns(RegimeWarning):
        g = construct_kst_blocker(1, 6)
    assert kst_parameters(1, 6) == {"d": 2, "girth_gt": 3, "n": 6}
    assert is_isomorphic(gen.complement(g), gen.cycle(6))
    assert g.min_degree() == g.n - 2 - 1 == 3


@pytest.mark.parametrize("s,t", [(2, 6), (2, 8), (2, 7), (1, 5)])
def test_kst_certificates(s, t):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        g = construct_kst_blocker(s, t)
    p = kst_parameters(s, t)
    sparse = gen.complement(g)
    assert set(sparse.degrees()) == {p["d"]} and girth(sparse) > p["girth_gt"]
    assert g.min_degree() == g.n - p["d"] - 1
    kst = gen.complete_bipartite(s, t)
    assert minor_search(kst, g) is None and not minor_oracle2(kst, g)


def test_kst_infeasible():
    with pytest.raises(InfeasibleParameters):
        construct_kst_blocker(3, 8)
    with pytest.raises(InfeasibleParameters):
        construct_kst_blocker(0, 3)


@given(st.integers(1, 40), st.integers(1, 60))
def test_kst_parameters_exact_floor(s, t):
    p = kst_parameters(s, t)
    m = p["n"] // 2 - s
    x = t - (2 * s) ** 0.5
    assert m == int(x // 2) or abs(x / 2 - round(x / 2)) < 1e-9
    assert (p["d"] - 1) ** 2 < 2 * s <= p["d"] ** 2


def test_sk7_blocker():
    g = construct_sk7_blocker(1)
    assert is_isomorphic(g, gen.complete_multipartite([3, 3, 3]))
    assert g.min_degree() == 6 and 6 >= Fraction(22, 3) - 2
    assert minor_search(gen.complete(7), g) is None and not minor_oracle2(gen.complete(7), g)
    assert minor_search(gen.complete(6), g) is not None
    for s in (2, 3):
        g = construct_sk7_blocker(s)
        t = (11 * s - 1) // 3
        assert (g.n, g.e, g.min_degree()) == (3 * t, 3 * t * t, 2 * t)
        assert density(g) == t


def test_bipartite_expand_examples():
    r = bipartite_expand(gen.complete(3), 3)
    assert r.graph.n == 18 == 4 * 3 // 1 + 2 * 3 and set(r.k.values()) == {3}
    r = bipartite_expand(gen.complete(2), 3)
    assert r.graph.n == 8 <= 4 + 4 and set(r.k.values()) == {2}
    with pytest.raises(InfeasibleParameters):
        bipartite_expand(gen.complete(3), 2)


@given(st.integers(1, 9), st.floats(0.1, 0.9), st.integers(3, 6), st.integers(0, 1000))
def test_bipartite_expand_properties(n, p, delta, seed):
    h = gen.gnp(n, p, seed=seed)
    r = bipartite_expand(h, delta)
    assert is_bipartite(r.graph) and r.graph.max_degree() <= delta
    assert verify_model(r.model)
    assert r.graph.n <= Fraction(4 * h.e, delta - 2) + 2 * h.n
    assert not any((a in r.A) == (b in r.A) for a, b in r.graph.edges())


def test_sktt_examples():
    g = construct_sktt_blocker(1, 2, 3)
    assert is_isomorphic(g, gen.friendship(3)) and (g.n, g.e) == (7, 9)
    assert minor_search(gen.cycle(4), g) is None and not minor_oracle2(gen.cycle(4), g)


@pytest.mark.parametrize("s,t,k", [(1, 3, 2), (2, 1, 3), (1, 2, 5), (2, 2, 1)])
def test_sktt_closed_forms(s, t, k):
    g = construct_sktt_blocker(s, t, k)
    y = s * t - 1
    assert g.n == k * t + y and g.e == comb(y, 2) + y * k * t + k * comb(t, 2)
    assert g.min_degree() == t - 1 + y


@pytest.mark.slow
def test_two_k22_absent_from_g224():
    g = construct_sktt_blocker(2, 2, 4)
    assert g.n == 11
    assert minor_search(gen.disjoint_union([gen.complete_bipartite(2, 2)] * 2), g) is None


def test_small_graph_enumeration_counts():
    # non-isomorphic graphs with min degree >= 1 on up to 6 vertices (OEIS A002494)
    counts = {}
    for g in small_graphs_min_degree(6, 1):
        counts[g.n] = counts.get(g.n, 0) + 1
    assert [counts.get(n, 0) for n in range(1, 7)] == [0, 1, 2, 7, 23, 122]


def test_minimal_enumeration_is_edge_minimal():
    for g in small_graphs_min_degree(7, 3, minimal=True):
        assert g.min_degree() >= 3
        assert all(min(g.degree(u), g.degree(v)) == 3 for u, v in g.edges())


def test_ha_falsify_examples():
    assert ha_falsify(gen.path(3), 8) is None
    assert ha_falsify(gen.complete(4), 9) is None
    k7 = ha_falsify(gen.complete(7), 12, "constructions")
    assert is_isomorphic(k7, gen.complete_multipartite([3, 3, 3]))
    # the exhaustive enumeration finds a smaller witness first
    small = ha_falsify(gen.complete(7), 9)
    assert is_isomorphic(small, gen.complete_multipartite([2, 2, 2, 2]))
    assert minor_search(gen.complete(7), small) is None
    octa = ha_falsify(gen.complete(5), 7)
    assert is_isomorphic(octa, gen.complete_multipartite([2, 2, 2]))


def test_ha_falsify_corpus():
    corpus = [gen.cycle(5), gen.complete(4), gen.complete_multipartite([2, 2, 2])]
    assert ha_falsify(gen.complete(5), 6, corpus=corpus) == corpus[2]


def test_certificate_shape():
    cert = certify_no_minor(construct_sk7_blocker(1), [gen.complete(7)], {"no_minor": "K7"})
    assert set(cert) == {"graph", "claimed_bounds", "recomputed_bounds", "minor_checks"}
    (chk,) = cert["minor_checks"]
    assert chk == {"pattern": "K7", "verdict": "absent", "oracle_agreement": True}
    assert cert["recomputed_bounds"]["min_degree"] == 6


def test_small_graph_enumeration_matches_networkx_atlas():
    from networkx.generators.atlas import graph_atlas_g

    want = {}
    for a in graph_atlas_g()[1:]:
        if a.number_of_nodes() <= 6 and min(dict(a.degree()).values()) >= 2:
            want[a.number_of_nodes()] = want.get(a.number_of_nodes(), 0) + 1
    got = {}
    for g in small_graphs_min_degree(6, 2):
        got[g.n] = got.get(g.n, 0) + 1
    assert got == want
