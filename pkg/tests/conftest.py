import numpy as np
import pytest
from hypothesis import strategies as st

from rankability.graph import Digraph, from_adjacency

# four-vertex example graph, vertices 1..4 relabelled 0..3:
# 1->2, 1->3, 1->4, 3->2, 4->2
EXAMPLE4 = [
    [0, 1, 1, 1],
    [0, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 1, 0, 0],
]


@pytest.fixture
def example4():
    return from_adjacency(EXAMPLE4)


def random_digraph(rng, n, density=0.5):
    a = (rng.random((n, n)) < density).astype(np.int64)
    np.fill_diagonal(a, 0)
    return Digraph(a)


@st.composite
def digraphs(draw, min_n=2, max_n=7):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    a = np.array(bits, dtype=np.int64).reshape(n, n)
    np.fill_diagonal(a, 0)
    return Digraph(a)
