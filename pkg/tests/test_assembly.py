import networkx as nx
import pytest

from minorforge import generators as gen
from minorforge.assembly import (
    EdgeExtension,
    assemble_minor_from_pieces,
    check_corollary_bound,
    enumerate_k_extension_steps,
    enumerate_k_extensions,
    extension_extremal_embed,
    is_H_linked,
    pieces_pipeline,
)
from minorforge.errors import DensityPreconditionFailed, PreconditionViolated
from minorforge.graph import build_graph
from minorforge.models import test_minor as minor_search, verify_model


def to_nx(g):
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges())
    return out


K4 = [(a, b) for a in range(4) for b in range(a + 1, 4)]
TWO_K4 = K4 + [(a + 4, b + 4) for a, b in K4]
H = build_graph(4, [(0, 1), (2, 3), (1, 2)])
HOSTS = [[0, 1, 2, 3], [4, 5, 6, 7]]
PIECES = [[0, 1], [2, 3]]


def matched_k4s():
    return build_graph(8, TWO_K4 + [(i, i + 4) for i in range(4)])


def test_extension_examples():
    assert list(enumerate_k_extensions(gen.complete(2), 0)) == [gen.complete(2)]
    out = list(enumerate_k_extensions(gen.empty(0), 1))
    assert out[0].n == 0
    assert sorted((g.n, g.e) for g in out[1:]) == [(1, 0), (2, 1)]


def _brute_classes(h, k):
    graphs = [EdgeExtension(h, ())]
    frontier = [()]
    for _ in range(k):
        nxt = []
        for steps in frontier:
            n = EdgeExtension(h, steps).apply().n
            for s in [("attach", None)] + [("attach", v) for v in range(n)] + [("pair",)]:
                nxt.append(steps + (s,))
        graphs += [EdgeExtension(h, s) for s in nxt]
        frontier = nxt
    reps = []
    for ext in graphs:
        g = to_nx(ext.apply())
        if not any(nx.is_isomorphic(g, r) for r in reps):
            reps.append(g)
    return len(reps)


@pytest.mark.parametrize("k", [1, 2])
def test_extension_count_matches_brute_force(k):
    k2 = gen.complete(2)
    got = list(enumerate_k_extensions(k2, k))
    assert len(got) == _brute_classes(k2, k) == {1: 4, 2: 11}[k]


def test_extension_invariants():
    h = gen.path(3)
    for ext in enumerate_k_extension_steps(h, 2):
        g = ext.apply()
        assert g.e <= h.e + 2 and g.n <= h.n + 4
        assert all(g.has_edge(u, v) == h.has_edge(u, v) for u in range(h.n) for v in range(h.n) if u != v)


def test_linked_examples():
    assert is_H_linked(gen.complete(4), gen.complete(2))
    r = is_H_linked(gen.path(4), gen.disjoint_union([gen.complete(2)] * 2))
    assert not r and r.witness is not None
    assert is_H_linked(gen.petersen(), gen.empty(0))


def test_corollary_bound_examples():
    r = check_corollary_bound(gen.complete(20), gen.complete(3), 1, bound="1/2")
    assert r and r.kappa == 19 and not r.certifies
    assert not check_corollary_bound(gen.cycle(5), gen.complete(3), 10, bound=1)


def test_extension_embed_examples():
    j = EdgeExtension(gen.complete(3), (("attach", 0),))
    m = extension_extremal_embed(j, gen.complete(6))
    assert m is not None and verify_model(m) and m.pattern == j.apply()
    m = extension_extremal_embed(EdgeExtension(gen.complete(3)), gen.cycle(5))
    assert m is not None and verify_model(m)
    assert extension_extremal_embed(EdgeExtension(gen.complete(3), (("pair",),)), gen.complete(4)) is None


def test_assembly_fixture():
    G = matched_k4s()
    res = assemble_minor_from_pieces(H, [(1, 2)], PIECES, G, HOSTS)
    assert verify_model(res.model)
    assert len(res.trace["Q"]) == 1
    assert minor_search(H, G) is not None


def test_assembly_without_cross_edges():
    h = gen.disjoint_union([gen.complete(2)] * 2)
    res = assemble_minor_from_pieces(h, [], PIECES, build_graph(8, TWO_K4), HOSTS)
    assert verify_model(res.model)
    assert res.model.used() <= set(range(8))


def test_assembly_density_witness():
    G = build_graph(8, TWO_K4 + [(0, 4)])
    with pytest.raises(DensityPreconditionFailed) as info:
        assemble_minor_from_pieces(H, [(1, 2)], PIECES, G, HOSTS)
    sep = info.value.separation
    assert sep is not None and sep.is_valid(G) and sep.order < 2


def test_assembly_rejects_bad_specs():
    G = matched_k4s()
    with pytest.raises(PreconditionViolated):
        assemble_minor_from_pieces(H, [(1, 2)], [[0, 1], [1, 2, 3]], G, HOSTS)
    with pytest.raises(PreconditionViolated):
        assemble_minor_from_pieces(H, [(0, 1)], [[0, 1], [2, 3]], G, HOSTS)
    with pytest.raises(PreconditionViolated):
        assemble_minor_from_pieces(H, [(1, 2)], PIECES, G, [[0, 1, 2, 3], [3, 4, 5, 6]])


def test_pipeline_matches_plain_assembly():
    G = matched_k4s()
    a = assemble_minor_from_pieces(H, [(1, 2)], PIECES, G, HOSTS)
    b = pieces_pipeline(H, [(1, 2)], PIECES, G, HOSTS)
    assert verify_model(a.model) and verify_model(b.model)
    assert b.trace["hosts"] == HOSTS


def test_pipeline_single_piece():
    G = gen.petersen()
    res = pieces_pipeline(gen.complete(4), [], [[0, 1, 2, 3]], G, [list(range(10))])
    assert verify_model(res.model)
    assert (minor_search(gen.complete(4), G) is not None)
