import pytest
from hypothesis import settings, strategies as st

from minorforge.generators import random_graph_corpus
from minorforge.graph import build_graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, k in zip(pairs, keep) if k])


@pytest.fixture(scope="session")
def corpus12():
    return random_graph_corpus(120, (1, 12), seed=2024)
