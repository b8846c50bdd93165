import pytest
from hypothesis import given, strategies as st

from minorforge import generators as gen
from minorforge.decomposition import Decomposition, bounded_decomposition, expand_for_component_size
from minorforge.errors import InvalidDecomposition, NoSeparatorSmallEnough
from minorforge.graph import component_masks, is_bipartite
from minorforge.models import test_minor as minor_search, verify_model

from conftest import graphs


def test_decomposition_examples():
    d = bounded_decomposition(gen.path(10), 4)
    bags = [sorted(b) for b in d.bags]
    assert all(b == list(range(b[0], b[-1] + 1)) for b in bags)
    overlaps = sum(len(a & b) for i, a in enumerate(d.bags) for b in d.bags[i + 1:])
    assert d.excess == overlaps > 0
    d = bounded_decomposition(gen.complete(3), 3)
    assert len(d.bags) == 1 and d.excess == 0
    with pytest.raises(NoSeparatorSmallEnough):
        bounded_decomposition(gen.complete(5), 3)
    with pytest.raises(ValueError):
        bounded_decomposition(gen.path(3), 1)


def test_expansion_examples():
    p3 = gen.path(3)
    r = expand_for_component_size(p3, Decomposition((frozenset({0, 1}), frozenset({1, 2})), None, 3))
    assert r.h_prime.n == 4 and len(r.F) == 1
    rest = r.h_prime_minus_F()
    assert [c.bit_count() for c in component_masks(rest)] == [2, 2]
    assert verify_model(r.model) and minor_search(p3, r.h_prime) is not None
    e3 = gen.empty(3)
    r = expand_for_component_size(e3, Decomposition((frozenset({0}), frozenset({1}), frozenset({2})), None, 3))
    assert r.h_prime == e3 and r.F == []
    c4 = gen.cycle(4)
    dec = Decomposition((frozenset({0, 1}), frozenset({2, 3}), frozenset({1, 2}), frozenset({3, 0})), None, 4)
    r = expand_for_component_size(c4, dec)
    assert len(r.F) == dec.excess == r.h_prime.n - c4.n == 4
    assert not r.violations()


def test_expansion_rejects_bad_decomposition():
    with pytest.raises(InvalidDecomposition):
        expand_for_component_size(gen.path(3), Decomposition((frozenset({0, 1}),), None, 3))


def _check_expansion(h, C):
    try:
        dec = bounded_decomposition(h, C)
    except NoSeparatorSmallEnough:
        return
    assert all(len(b) <= C for b in dec.bags)
    r = expand_for_component_size(h, dec)
    assert not r.violations()
    assert verify_model(r.model)
    assert r.h_prime.max_degree() <= h.max_degree() + 2
    assert len(r.F) == dec.excess == sum(len(p) - 1 for p in r.copy_paths.values())
    rest = r.h_prime_minus_F()
    for c in component_masks(rest):
        assert c.bit_count() <= C
    if is_bipartite(h):
        assert is_bipartite(rest)


@given(graphs(min_n=1, max_n=10), st.sampled_from([2, 3, 4, 5]))
def test_expansion_properties(h, C):
    _check_expansion(h, C)


def test_expansion_on_structured_graphs():
    for h in (gen.grid(3, 4), gen.path(12), gen.cycle(9), gen.star(6), gen.complete_bipartite(2, 5)):
        for C in (3, 4, 5):
            _check_expansion(h, C)


def test_petersen_has_no_small_decomposition():
    with pytest.raises(NoSeparatorSmallEnough):
        bounded_decomposition(gen.petersen(), 6)


def test_decomposition_dict_roundtrip():
    d = bounded_decomposition(gen.path(6), 3)
    back = Decomposition.from_dict(d.to_dict(), 6)
    assert back.bags == d.bags and back.excess == d.excess
