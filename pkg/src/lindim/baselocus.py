"""Linear base locus: k-values of the cycles spanned by the base points."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import LinearSystem, MultiIndex, canonicalize
from .picard import PicardClass


def excess(mults: Sequence[int], d: int, indices: Sequence[int]) -> int:
    """Unclamped ``K_I = sum_{i in I} m_i - r d`` for 0-based ``indices`` (``r = |I| - 1``)."""
    return sum(mults[i] for i in indices) - (len(indices) - 1) * d


def k_value(L: LinearSystem, I: MultiIndex) -> int:
    """Containment multiplicity ``k_I = max(sum m_i - r d, 0)``; ``k_{empty} = d``."""
    I.check(L.s)
    return max(excess(L.mults, L.d, [i - 1 for i in I]), 0)


def monotone(L: LinearSystem) -> bool:
    """Whether ``K`` is non-increasing under enlarging the index set (all ``m_i <= d``)."""
    return all(m <= L.d for m in L.mults)


def _walk(mults: Sequence[int], d: int, max_size: int, keep) -> Iterator[tuple[tuple[int, ...], int]]:
    # ``keep(K, size)`` must be monotone: once false it stays false for larger
    # sets when K can only decrease. Elements with m > d can raise K, so the
    # cut then uses the best still-reachable K as an upper bound.
    s = len(mults)
    gain = [0] * (s + 1)
    for i in range(s - 1, -1, -1):
        gain[i] = gain[i + 1] + max(mults[i] - d, 0)

    stack: list[tuple[int, tuple[int, ...], int]] = [(0, (), 0)]
    while stack:
        start, chosen, total = stack.pop()
        for j in range(s - 1, start - 1, -1):
            I = chosen + (j,)
            tot = total + mults[j]
            K = tot - (len(I) - 1) * d
            if keep(K, len(I)):
                yield I, K
            if len(I) < max_size and keep(K + gain[j + 1], len(I) + 1):
                stack.append((j + 1, I, tot))


def positive_subsets(L: LinearSystem, max_size: int | None = None) -> Iterator[tuple[tuple[int, ...], int]]:
    """All 0-based index sets with ``K_I > 0``, pruned depth-first."""
    cap = L.s if max_size is None else max_size
    return _walk(L.mults, L.d, cap, lambda K, size: K > 0)


@dataclass(frozen=True)
class BaseCycle:
    index_set: MultiIndex
    k: int
    exact: bool

    @property
    def r(self) -> int:
        return self.index_set.r

    def to_json(self) -> dict:
        return {"indices": list(self.index_set.indices), "r": self.r, "k": self.k, "exact": self.exact}


@dataclass(frozen=True)
class BaseLocusReport:
    cycles: tuple[BaseCycle, ...]
    rbar: int
    pruned: bool = True

    def by_dimension(self, r: int) -> list[BaseCycle]:
        return [c for c in self.cycles if c.r == r]

    def to_json(self) -> dict:
        return {"rbar": self.rbar, "cycles": [c.to_json() for c in self.cycles]}

    @classmethod
    def from_json(cls, obj: dict) -> "BaseLocusReport":
        cycles = tuple(BaseCycle(MultiIndex(tuple(c["indices"])), c["k"], c["exact"]) for c in obj["cycles"])
        return cls(cycles, obj["rbar"])


def enumerate_base_cycles(L: LinearSystem) -> BaseLocusReport:
    """Every cycle ``L_I`` with ``0 <= r <= min(n,s)-1`` and ``k_I > 0``.

    Multiplicities are exact for ``s <= n+2`` and lower bounds otherwise.
    """
    exact = L.s <= L.n + 2
    found = [
        BaseCycle(MultiIndex(tuple(i + 1 for i in I)), K, exact)
        for I, K in positive_subsets(L, max_size=min(L.n, L.s))
    ]
    found.sort(key=lambda c: c.index_set.sort_key())
    rbar = max((c.r for c in found), default=-1)
    return BaseLocusReport(tuple(found), rbar, pruned=monotone(L))


@dataclass(frozen=True)
class HyperplaneSplit:
    """Residual ``delta H - sum mu_i E_i`` after removing every base hyperplane ``k_I`` times."""

    residual: PicardClass
    splits: tuple[tuple[MultiIndex, int], ...]

    @property
    def effective(self) -> bool:
        return self.residual.degree >= 0 and all(m >= 0 for m in self.residual.mults)

    def residual_system(self) -> LinearSystem:
        return self.residual.to_system()

    def to_json(self) -> dict:
        return {
            "residual": self.residual.to_json(),
            "effective": self.effective,
            "splits": [{"indices": list(I.indices), "k": k} for I, k in self.splits],
        }


def split_hyperplanes(L: LinearSystem) -> HyperplaneSplit:
    """Split off each hyperplane through n of the points ``k_{I(n-1)}`` times.

    A negative residual degree or multiplicity is reported, not raised: it
    signals that ``L`` is empty.
    """
    if L.s < L.n:
        raise ValueError(f"hyperplane splitting needs s >= n, got s={L.s}, n={L.n}")
    splits = []
    delta = L.d
    mu = list(L.mults)
    for I, K in _walk(L.mults, L.d, L.n, lambda K, size: K > 0):
        if len(I) != L.n:
            continue
        splits.append((MultiIndex(tuple(i + 1 for i in I)), K))
        delta -= K
        for i in I:
            mu[i] -= K
    splits.sort(key=lambda t: t[0].sort_key())
    return HyperplaneSplit(PicardClass(L.n, delta, tuple(mu)), tuple(splits))


def reduce_cones(L: LinearSystem) -> LinearSystem | None:
    """Strip the points of multiplicity ``d``: each one makes every member a cone over it.

    Returns ``None`` when at least n+1 such points force the system to be empty.
    At most ``n - 1`` reductions are applied so the result stays in P^1 or higher.
    """
    if L.d < 1:
        return L
    cone = sum(1 for m in L.mults if m == L.d)
    if cone >= L.n + 1:
        return None
    strip = min(cone, L.n - 1)
    if strip == 0:
        return L
    rest = list(L.mults)
    for _ in range(strip):
        rest.remove(L.d)
    return canonicalize(L.n - strip, L.d, rest)
