import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import systems
from lindim.core import binomial, canonicalize
from lindim.dimensions import linear_virtual_dimension
from lindim.froberg import apolar_degrees, froberg_prediction, raw_series, truncated_series


def test_two_quadrics_on_the_line():
    t = truncated_series(1, [2, 2], 4)
    assert list(t.raw[:3]) == [1, 2, 1]
    assert list(t.coefficients) == [1, 2, 1, 0, 0]
    assert t.truncation_index == 3


def test_single_quadric_never_truncates():
    t = truncated_series(1, [2], 3)
    assert list(t.coefficients) == [1, 2, 2, 2]
    assert t.truncation_index is None


def test_linear_form_in_the_plane():
    assert list(truncated_series(2, [1], 2).coefficients) == [1, 2, 3]


def test_no_generators_gives_polynomial_ring():
    assert raw_series(3, [], 5) == [binomial(3 + i, 3) for i in range(6)]


def test_errors():
    with pytest.raises(ValueError):
        truncated_series(2, [1], -1)
    with pytest.raises(ValueError):
        truncated_series(2, [0], 3)
    with pytest.raises(ValueError):
        apolar_degrees(canonicalize(2, 2, [3]))


def test_predictions():
    # nine general quartic powers in four variables fill degree 6
    assert froberg_prediction(canonicalize(3, 6, [3] * 9)) == -1
    for n in range(1, 6):
        for d in range(1, 7):
            assert froberg_prediction(canonicalize(n, d, [1])) == binomial(n + d, n) - 2


@given(systems(m_le_d=True))
def test_raw_coefficient_is_linear_virtual_dimension(L):
    if L.d == 0:
        return
    assert raw_series(L.n, apolar_degrees(L), L.d)[L.d] - 1 == linear_virtual_dimension(L)


@given(st.integers(0, 6), st.lists(st.integers(1, 6), max_size=8), st.integers(0, 12))
def test_truncation_shape(n, degrees, D):
    t = truncated_series(n, degrees, D)
    cut = t.truncation_index
    assert t.coefficients[0] == (1 if cut != 0 else 0)
    if cut is None:
        assert t.coefficients == t.raw and all(a > 0 for a in t.raw)
    else:
        assert t.raw[cut] <= 0
        assert all(a > 0 for a in t.raw[:cut])
        assert t.coefficients[:cut] == t.raw[:cut]
        assert all(b == 0 for b in t.coefficients[cut:])
