import math
import random
from fractions import Fraction

import pytest
from hypothesis import given

from minorforge import generators as gen
from minorforge.density import (
    dense_step,
    extract_pieces,
    mader_subgraph,
    mader_subgraph_with_ids,
    prune_high_degree,
    extraction_constants,
)
from minorforge.errors import PreconditionViolated
from minorforge.graph import build_graph, density, induced_mask, mask_of
from minorforge.models import verify_model
from minorforge.separations import connectivity

from conftest import graphs


def _piece_density(g, p):
    return density(induced_mask(g, mask_of(p))[0])


def test_prune_examples():
    r = prune_high_degree(gen.petersen(), 3)
    assert r.graph == gen.petersen() and r.removed == []
    r = prune_high_degree(gen.complete(6), 5, Fraction(1, 10))
    assert r.removed == [] and r.graph.n == 6
    star_heavy = build_graph(9, [(0, i) for i in range(1, 9)] + [(1, 2), (3, 4), (5, 6), (7, 8)])
    with pytest.raises(PreconditionViolated):
        prune_high_degree(star_heavy, 3)


@given(graphs(min_n=1, max_n=12))
def test_prune_max_degree_bound(g):
    D = g.min_degree()
    for alpha in (Fraction(1, 2), 1):
        r = prune_high_degree(g, D, alpha)
        assert all(g.degree(v) <= (1 + alpha) * D for v in r.kept)
        assert r.graph.n == g.n - len(r.removed)


def test_prune_bounds_when_density_low():
    # one hub on a sparse 4-regular graph keeps the density within (1 + eps) D / 2
    base = gen.regular_high_girth(4, 3, 40, seed=2)
    extra = [v for v in range(1, 40) if not base.has_edge(0, v)][:4]
    g = build_graph(40, base.edges() + [(0, v) for v in extra])
    eps, alpha = Fraction(1, 16), Fraction(1, 2)
    gamma = 2 * eps * (1 + 1 / alpha)
    assert density(g) <= (1 + eps) * 4 / 2
    r = prune_high_degree(g, 4, alpha, eps)
    assert r.removed == [0]
    assert r.bound_checked and r.bound_ok
    assert r.density >= (1 - gamma) * 4 / 2


def test_dense_step_examples():
    out = dense_step(gen.complete(20), Fraction(1, 4))
    assert out.tag == "pieces"
    (p,) = out.pieces
    d = density(gen.complete(20))
    assert len(p) <= d / (2 * Fraction(1, 4)) and _piece_density(gen.complete(20), p) >= d / 4
    out = dense_step(gen.complete(20), Fraction(1, 10), strict=False)
    assert out.tag == "pieces"
    with pytest.raises(PreconditionViolated):
        dense_step(gen.complete(20), Fraction(1, 10))
    with pytest.raises(PreconditionViolated):
        dense_step(gen.cycle(30), Fraction(2, 5))


def test_dense_step_outcomes_reverified():
    rng = random.Random(24)
    for _ in range(8):
        g = gen.gnp(24, 0.5, seed=rng.randrange(1 << 20))
        eps = Fraction(1, 20)
        out = dense_step(g, eps, strict=False)
        d = density(g)
        assert not out.violations(g, d / (2 * eps), eps * d)
        if out.tag == "denser_minor":
            assert verify_model(out.model) and density(out.minor) >= (1 + eps) * d


def test_extract_pieces_examples():
    k40 = gen.complete(40)
    eps = Fraction(1, 10)
    out = extract_pieces(k40, 20, 2, eps=eps, gamma=Fraction(1, 5))
    assert out.tag == "pieces" and len(out.pieces) == 2
    assert not out.violations(k40, 20 / eps, eps * 20)
    assert not out.pieces[0] & out.pieces[1]
    assert extract_pieces(k40, 20, 0).pieces == []
    with pytest.raises(PreconditionViolated):
        extract_pieces(gen.cycle(8), 3, 1)


def test_extract_pieces_ledger_rows():
    g = gen.gnp(40, 0.6, seed=8)
    out = extract_pieces(g, g.min_degree(), 3)
    assert out.ledger[0]["round"] == 0
    for row in out.ledger[1:]:
        assert {"round", "v", "e", "density", "hypothesis_ok", "action"} <= set(row)
        if row["action"] == "piece":
            assert row["bounds_ok"]


def test_extraction_constants_exact():
    c = extraction_constants(2, Fraction(1, 20), Fraction(1, 5))
    assert c["C"] == (3 + Fraction(5, 3)) * 20
    assert c["eps_prime"] < 0 and not c["eps_ok"]


def test_mader_examples():
    k5 = gen.complete(5)
    assert mader_subgraph(k5) == k5
    a = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    two = build_graph(9, a + [(u + 4, v + 4) for u, v in a])
    sub, old = mader_subgraph_with_ids(two)
    assert sub == k5 and connectivity(sub) == 4
    tree = gen.star(4)
    sub = mader_subgraph(tree)
    assert connectivity(sub) >= math.ceil(density(tree) / 2)
    with pytest.raises(PreconditionViolated):
        mader_subgraph(gen.empty(3))


def test_mader_connectivity_on_corpus(corpus12):
    for g in corpus12:
        if g.e == 0:
            continue
        sub, old = mader_subgraph_with_ids(g)
        assert connectivity(sub) >= math.ceil(density(g) / 2)
        assert all(sub.has_edge(i, j) == g.has_edge(old[i], old[j]) for i in range(sub.n) for j in range(i + 1, sub.n))
