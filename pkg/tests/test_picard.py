import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lindim.core import canonicalize
from lindim.picard import (
    Effectivity,
    PicardClass,
    Verdict,
    cremona,
    cremona_reduce,
    effectivity,
    is_cremona_reduced,
    pairing,
    weyl_base_locus,
    weyl_orbit,
)


def cls(n, d, *mults):
    return PicardClass(n, d, tuple(mults))


@st.composite
def class_and_base(draw, n_max=5, s_max=9, bound=12):
    n = draw(st.integers(1, n_max))
    s = draw(st.integers(n + 1, max(n + 1, s_max)))
    A = PicardClass(n, draw(st.integers(-bound, bound)), tuple(draw(st.lists(st.integers(-bound, bound), min_size=s, max_size=s))))
    B = PicardClass(n, draw(st.integers(-bound, bound)), tuple(draw(st.lists(st.integers(-bound, bound), min_size=s, max_size=s))))
    S = draw(st.lists(st.integers(1, s), min_size=n + 1, max_size=n + 1, unique=True))
    return A, B, S


def test_pairing_examples():
    H = PicardClass.hyperplane(4, 0)
    assert pairing(H, H) == 3
    assert pairing(cls(2, 5, 3, 3, 3), cls(2, 1, 1, 1, 0)) == -1
    assert pairing(PicardClass.exceptional(3, 2, 1), PicardClass.exceptional(3, 2, 2)) == 0
    assert pairing(PicardClass.exceptional(3, 2, 1), PicardClass.exceptional(3, 2, 1)) == -1
    with pytest.raises(ValueError):
        pairing(cls(2, 1, 0), cls(3, 1, 0))


def test_cremona_examples():
    assert cremona(cls(2, 2, 1, 1, 1, 1, 1), [1, 2, 3]) == cls(2, 1, 0, 0, 0, 1, 1)
    A = cls(4, 10, 6, 6, 6, 6, 6, 6, 6)
    assert cremona(A, [1, 2, 3, 4, 5]) == A
    with pytest.raises(ValueError):
        cremona(A, [1, 2, 3])
    with pytest.raises(IndexError):
        cremona(A, [1, 2, 3, 4, 9])


@settings(max_examples=500)
@given(class_and_base())
def test_cremona_involution_and_isometry(args):
    A, B, S = args
    assert cremona(cremona(A, S), S) == A
    assert pairing(cremona(A, S), cremona(B, S)) == pairing(A, B)


def test_is_cremona_reduced():
    assert is_cremona_reduced(cls(3, 10, *[5] * 9))
    assert not is_cremona_reduced(cls(2, 2, 1, 1, 1, 1, 1))
    assert is_cremona_reduced(cls(4, 10, *[6] * 7))
    assert is_cremona_reduced(cls(3, 1, 5, 5))


@given(class_and_base(bound=8))
def test_reduced_means_no_move_lowers_degree(args):
    A = PicardClass(args[0].n, abs(args[0].degree), tuple(abs(m) for m in args[0].mults))
    lowers = any(cremona(A, S).degree < A.degree for S in itertools.combinations(range(1, A.s + 1), A.n + 1))
    assert is_cremona_reduced(A) == (not lowers)


def test_reduce_triple_points_in_p3():
    red = cremona_reduce(cls(3, 4, 3, 3, 3, 3))
    assert red.moves[0].base == (1, 2, 3, 4) and red.moves[0].c == 4
    assert red.moves[0].result == cls(3, 0, -1, -1, -1, -1)
    assert red.moves[1].normalized == (1, 2, 3, 4)
    assert red.reduced == cls(3, 0, 0, 0, 0, 0)
    assert red.verdict is Verdict.REDUCED


def test_reduce_examples():
    A = cls(4, 10, *[6] * 7)
    red = cremona_reduce(A)
    assert red.reduced == A and not red.moves and red.verdict is Verdict.REDUCED
    B = cls(3, 5, 2, 2)
    assert cremona_reduce(B).reduced == B
    red = cremona_reduce(cls(2, 2, 1, 1, 1, 1, 1))
    assert red.bases[0] == (1, 2, 3) and red.moves[0].result == cls(2, 1, 0, 0, 0, 1, 1)
    assert red.reduced == cls(2, 0, 0, 0, 0, 0, 0)


def test_reduce_detects_negative_degree():
    red = cremona_reduce(cls(2, 4, 3, 3, 3, 3))
    assert red.verdict is Verdict.NEGATIVE_DEGREE


@given(st.integers(1, 4), st.integers(0, 12), st.lists(st.integers(0, 12), min_size=1, max_size=8))
def test_reduce_terminates_within_degree_steps(n, d, mults):
    red = cremona_reduce(PicardClass(n, d, tuple(mults)))
    assert len(red.bases) <= d + 1
    if red.verdict is Verdict.REDUCED:
        assert is_cremona_reduced(red.reduced)


def test_weyl_orbit_small():
    assert set(weyl_orbit(2, 3, 0)) == {PicardClass.exceptional(2, 3, i) for i in (1, 2, 3)}
    orbit = weyl_orbit(2, 3, 1)
    lines = {cls(2, 1, 1, 1, 0), cls(2, 1, 1, 0, 1), cls(2, 1, 0, 1, 1)}
    assert set(orbit) == {PicardClass.exceptional(2, 3, i) for i in (1, 2, 3)} | lines
    with pytest.raises(ValueError):
        weyl_orbit(3, 3, 1)


@pytest.mark.parametrize("n, s, depth", [(2, 5, 4), (2, 6, 3), (3, 6, 3), (4, 7, 2)])
def test_weyl_orbit_invariants(n, s, depth):
    K = PicardClass.anticanonical(n, s)
    for F in weyl_orbit(n, s, depth):
        assert pairing(F, F) == -1
        assert pairing(F, K) == n - 1


def test_weyl_base_locus_planar_lines():
    found = weyl_base_locus(cls(2, 5, 3, 3, 3), depth=1)
    assert {(c.divisor, c.multiplicity) for c in found} == {
        (cls(2, 1, 1, 1, 0), 1), (cls(2, 1, 1, 0, 1), 1), (cls(2, 1, 0, 1, 1), 1)
    }
    assert not weyl_base_locus(cls(2, 5, 3, 3, 3), depth=0)
    # <D, E_i> = m_i > 0: the exceptional divisors themselves are never base components
    assert not weyl_base_locus(cls(2, 5, 3, 3, 3), depth=0, include_exceptional=True)
    assert weyl_base_locus(cls(2, 5, 3, 3, 0), depth=0, include_exceptional=True)[0].trivial


def test_weyl_base_locus_homogeneous_sextics_in_p4():
    assert not [c for c in weyl_base_locus(cls(4, 10, *[6] * 7), depth=2) if c.multiplicity > 0]


@given(st.integers(1, 9), st.lists(st.integers(1, 9), min_size=3, max_size=5))
def test_weyl_base_locus_recovers_planar_line_multiplicities(d, mults):
    D = PicardClass(2, d, tuple(mults))
    found = {c.divisor: c.multiplicity for c in weyl_base_locus(D, depth=1)}
    for i, j in itertools.combinations(range(len(mults)), 2):
        k = mults[i] + mults[j] - d
        line = PicardClass(2, 1, tuple(1 if t in (i, j) else 0 for t in range(len(mults))))
        if k > 0:
            assert found[line] == k
        elif k < 0:
            assert line not in found


@pytest.mark.parametrize("n, d, mults, verdict", [
    (4, 6, [5, 5, 5, 4, 3, 2], Effectivity.NONEMPTY),
    (3, 4, [3, 3, 3, 3], Effectivity.NONEMPTY),
    (3, 4, [4, 4, 4, 4], Effectivity.EMPTY),
    (2, 3, [4], Effectivity.EMPTY),
    (2, 4, [3, 3, 3, 3], Effectivity.EMPTY),
])
def test_effectivity_examples(n, d, mults, verdict):
    assert effectivity(canonicalize(n, d, mults)) is verdict


@given(st.integers(1, 5), st.integers(0, 8), st.data())
def test_effectivity_exact_for_few_points(n, d, data):
    mults = data.draw(st.lists(st.integers(1, d + 2), max_size=n + 2))
    L = canonicalize(n, d, mults)
    expected = all(m <= d for m in mults) and sum(mults) <= n * d
    assert (effectivity(L) is Effectivity.NONEMPTY) == expected


def test_class_helpers():
    A = cls(3, 4, 2, 0, -1)
    assert str(A) == "4H-2E1+E3"
    with pytest.raises(ValueError):
        A.to_system()
    assert cls(3, 4, 2, 0, 1).to_system() == canonicalize(3, 4, [2, 1])
