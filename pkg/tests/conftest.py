import itertools

import pytest
from hypothesis import strategies as st

from lindim.core import binomial, canonicalize


@st.composite
def systems(draw, n_max=5, d_max=8, s_max=7, m_le_d=False):
    n = draw(st.integers(1, n_max))
    d = draw(st.integers(0, d_max))
    top = max(d, 1) if m_le_d else d + 2
    if m_le_d and d == 0:
        return canonicalize(n, d, [])
    mults = draw(st.lists(st.integers(1, top), max_size=s_max))
    return canonicalize(n, d, mults)


def brute_lvdim(L):
    """Alternating sum over every subset of points, no pruning or grouping."""
    total = 0
    for size in range(L.s + 1):
        for I in itertools.combinations(L.mults, size):
            r = size - 1
            k = L.d if size == 0 else max(sum(I) - r * L.d, 0)
            total += (-1) ** (r + 1) * binomial(L.n + k - r - 1, L.n)
    return total - 1


@pytest.fixture
def sextic():
    return canonicalize(4, 6, [5, 5, 5, 4, 3, 2])
