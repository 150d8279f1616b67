import pytest
from hypothesis import given
from hypothesis import strategies as st

from lindim.core import LinearSystem, MultiIndex, binomial, canonicalize, format_mults, parse_mults

from conftest import systems


def test_binomial_vanishes_below():
    assert binomial(3, 5) == 0
    assert binomial(-4, 2) == 0
    assert binomial(6, 2) == 15
    with pytest.raises(ValueError):
        binomial(3, -1)


def test_canonicalize_sorts_and_drops_zeros():
    L = canonicalize(3, 4, [2, 0, 3, 1])
    assert L.mults == (3, 2, 1)
    assert str(L) == "L_{3,4}(3,2,1)"
    with pytest.raises(ValueError):
        canonicalize(3, 4, [2, -1])


def test_constructor_validates():
    with pytest.raises(ValueError):
        LinearSystem(0, 2, ())
    with pytest.raises(ValueError):
        LinearSystem(2, -1, ())
    with pytest.raises(ValueError):
        LinearSystem(2, 3, (1, 2))


@pytest.mark.parametrize("text, expected", [
    ("5,5,5,4", [5, 5, 5, 4]),
    ("3x9", [3] * 9),
    ("5^3,4,3,2", [5, 5, 5, 4, 3, 2]),
    ("", []),
])
def test_parse_mults(text, expected):
    assert parse_mults(text) == expected


def test_parse_mults_rejects_garbage():
    with pytest.raises(ValueError):
        parse_mults("5,a")


def test_format_mults():
    assert format_mults((5, 5, 5, 4, 3, 2)) == "5^3,4,3,2"
    assert format_mults(()) == ""


@given(systems())
def test_json_round_trip(L):
    assert LinearSystem.from_json(L.to_json()) == L


@given(systems())
def test_format_parse_round_trip(L):
    assert canonicalize(L.n, L.d, parse_mults(format_mults(L.mults))) == L


def test_multi_index():
    I = MultiIndex.of(3, 1, 2)
    assert I.indices == (1, 2, 3) and I.r == 2 and len(I) == 3
    assert MultiIndex().r == -1
    with pytest.raises(ValueError):
        MultiIndex((2, 2))
    with pytest.raises(ValueError):
        MultiIndex((0, 1))
    with pytest.raises(IndexError):
        MultiIndex.of(1, 7).check(6)


@given(st.lists(st.integers(1, 20), unique=True, max_size=6))
def test_multi_index_sort_key_orders_by_size_first(idx):
    I = MultiIndex.of(*idx)
    assert I.sort_key()[0] == len(idx)
