"""Virtual, expected, linear virtual and linear expected dimensions."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .core import LinearSystem, binomial, canonicalize


def virtual_dimension(L: LinearSystem) -> int:
    return binomial(L.n + L.d, L.n) - sum(binomial(L.n + m - 1, L.n) for m in L.mults) - 1


def expected_dimension(L: LinearSystem) -> int:
    return max(virtual_dimension(L), -1)


def _groups(mults) -> list[tuple[int, int]]:
    return [(v, len(list(g))) for v, g in itertools.groupby(sorted(mults, reverse=True))]


def linear_virtual_dimension(L: LinearSystem) -> int:
    """Alternating sum of ``binom(n + k_I - r - 1, n)`` over all index sets, minus one.

    Points of equal multiplicity are interchangeable, so index sets are walked
    as sub-multisets weighted by how many index sets realise them. Only sets
    with ``k_I >= |I|`` contribute; when every ``m_i <= d`` that threshold can
    only fail harder as the set grows, which bounds the walk.
    """
    n, d = L.n, L.d
    groups = _groups(L.mults)
    cut = all(v <= d for v, _ in groups)
    total = binomial(n + d, n)

    def walk(g: int, size: int, msum: int, weight: int) -> int:
        acc = 0
        for gi in range(g, len(groups)):
            v, count = groups[gi]
            for c in range(1, count + 1):
                j = size + c
                K = msum + c * v - (j - 1) * d
                if cut and K < j:
                    break
                w = weight * math.comb(count, c)
                if K >= j:
                    acc += (-1) ** j * w * binomial(n + K - j, n)
                acc += walk(gi + 1, j, msum + c * v, w)
        return acc

    return total + walk(0, 0, 0, 1) - 1


class ContainmentPolicy(str, enum.Enum):
    """Which larger systems the ``ldim`` emptiness clause looks at."""

    DELETION = "deletion"
    EXHAUSTIVE = "exhaustive"


EXHAUSTIVE_MAX_POINTS = 6


def containing_systems(L: LinearSystem, policy: ContainmentPolicy = ContainmentPolicy.DELETION) -> Iterator[LinearSystem]:
    """Distinct systems containing ``L``, starting with ``L`` itself.

    ``DELETION`` drops subsets of points. ``EXHAUSTIVE`` lowers each
    multiplicity to any value in ``[0, m_i]``, for at most six points.
    """
    seen = {L.mults}
    yield L
    if policy is ContainmentPolicy.EXHAUSTIVE and L.s <= EXHAUSTIVE_MAX_POINTS:
        ranges = [range(m, -1, -1) for m in L.mults]
    else:
        ranges = [range(count, -1, -1) for _, count in _groups(L.mults)]
        values = [v for v, _ in _groups(L.mults)]
    for choice in itertools.product(*ranges):
        if policy is ContainmentPolicy.EXHAUSTIVE and L.s <= EXHAUSTIVE_MAX_POINTS:
            mults = choice
        else:
            mults = [v for v, c in zip(values, choice) for _ in range(c)]
        C = canonicalize(L.n, L.d, mults)
        if C.mults in seen:
            continue
        seen.add(C.mults)
        yield C


def ldim_witness(L: LinearSystem, policy: ContainmentPolicy = ContainmentPolicy.DELETION) -> tuple[int, LinearSystem | None]:
    """``ldim`` together with the containing system whose negative lvdim forced ``-1`` (if any)."""
    for C in containing_systems(L, policy):
        if linear_virtual_dimension(C) < 0:
            return -1, C
    return max(linear_virtual_dimension(L), -1), None


def linear_expected_dimension(L: LinearSystem, policy: ContainmentPolicy = ContainmentPolicy.DELETION) -> int:
    return ldim_witness(L, policy)[0]


class Classification(str, enum.Enum):
    NON_SPECIAL = "non-special"
    LINEARLY_NON_SPECIAL_BUT_SPECIAL = "linearly-non-special-but-special"
    LINEARLY_SPECIAL = "linearly-special"
    EMPTY = "empty"


def classify(L: LinearSystem, actual: int, ldim: int | None = None,
             policy: ContainmentPolicy = ContainmentPolicy.DELETION) -> Classification:
    """Compare an actual dimension with ``ldim`` first, then with ``edim``.

    ``EMPTY`` is the non-special case ``actual == edim == -1``.
    """
    if actual < -1:
        raise ValueError(f"dimension must be >= -1, got {actual}")
    if ldim is None:
        ldim = linear_expected_dimension(L, policy)
    if actual != ldim:
        return Classification.LINEARLY_SPECIAL
    if actual == expected_dimension(L):
        return Classification.EMPTY if actual == -1 else Classification.NON_SPECIAL
    return Classification.LINEARLY_NON_SPECIAL_BUT_SPECIAL


@dataclass(frozen=True)
class DimensionReport:
    system: LinearSystem
    vdim: int
    edim: int
    lvdim: int
    ldim: int
    oracle_dim: int | None
    classification: Classification
    predicted: bool = False

    def to_json(self) -> dict:
        return {
            "system": self.system.to_json(),
            "vdim": self.vdim,
            "edim": self.edim,
            "lvdim": self.lvdim,
            "ldim": self.ldim,
            "oracle_dim": self.oracle_dim,
            "classification": self.classification.value,
            "predicted": self.predicted,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DimensionReport":
        return cls(
            LinearSystem.from_json(obj["system"]), obj["vdim"], obj["edim"], obj["lvdim"], obj["ldim"],
            obj["oracle_dim"], Classification(obj["classification"]), obj.get("predicted", False),
        )


def dimension_report(L: LinearSystem, oracle_dim: int | None = None,
                     policy: ContainmentPolicy = ContainmentPolicy.DELETION) -> DimensionReport:
    """Gather all dimension counts; without an oracle value ``ldim`` stands in and the report is marked predicted."""
    ldim = linear_expected_dimension(L, policy)
    actual = ldim if oracle_dim is None else oracle_dim
    return DimensionReport(
        L, virtual_dimension(L), expected_dimension(L), linear_virtual_dimension(L), ldim,
        oracle_dim, classify(L, actual, ldim), predicted=oracle_dim is None,
    )


@dataclass(frozen=True)
class N3Condition:
    """``sum m_i <= n d + b`` with ``b = min(n - s_d, s - n - 2)`` for systems with ``s >= n+3`` points."""

    s_d: int
    b: int
    total: int
    bound: int
    in_scope: bool
    satisfied: bool

    def to_json(self) -> dict:
        return {"s_d": self.s_d, "b": self.b, "sum": self.total, "bound": self.bound,
                "in_scope": self.in_scope, "satisfied": self.satisfied}


def n3_condition(L: LinearSystem) -> N3Condition:
    s_d = sum(1 for m in L.mults if m == L.d)
    b = min(L.n - s_d, L.s - L.n - 2)
    total = sum(L.mults)
    bound = L.n * L.d + b
    in_scope = L.s >= L.n + 3 and L.d >= 2 and all(m <= L.d for m in L.mults)
    return N3Condition(s_d, b, total, bound, in_scope, in_scope and total <= bound)


def chandler_decomposition(L: LinearSystem, pivot: int) -> tuple[LinearSystem, LinearSystem]:
    """Lower the pivot point's multiplicity ``k`` by one; ``W = L_{n-1,k-1}(c_i)``, ``c_i = max(k + m_i - d - 1, 0)``."""
    if not 1 <= pivot <= L.s:
        raise IndexError(f"pivot {pivot} out of range for {L.s} points")
    if L.n < 2:
        raise ValueError("the residual system W lives in P^{n-1}; needs n >= 2")
    k = L.mults[pivot - 1]
    others = L.mults[: pivot - 1] + L.mults[pivot:]
    if any(m > L.d - 1 for m in others):
        raise ValueError(f"all non-pivot multiplicities must be <= d-1 = {L.d - 1}: {others}")
    Lprime = canonicalize(L.n, L.d, others + (k - 1,))
    W = canonicalize(L.n - 1, k - 1, [max(k + m - L.d - 1, 0) for m in others])
    return Lprime, W


def additivity_split(L: LinearSystem, t: int) -> tuple[LinearSystem, LinearSystem]:
    """Trace/residual pair for degenerating the first ``t`` points onto a hyperplane.

    Trace: ``L_{n-1,d}(m_1..m_t, k_ij)`` over the (at most two) pairs among
    the remaining points with ``m_i + m_j > d``. Residual: ``L_{n,d-1}(m_1-1..m_t-1, m_{t+1}..m_s)``.
    """
    if not 1 < t < L.s:
        raise ValueError(f"need 1 < t < s, got t={t}, s={L.s}")
    if L.n < 2 or L.d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    tail = L.mults[t:]
    pairs = [a + b - L.d for a, b in itertools.combinations(tail, 2) if a + b - L.d > 0]
    if len(pairs) > 2:
        raise ValueError(f"{len(pairs)} positive pairs among the last points; at most two allowed")
    trace = canonicalize(L.n - 1, L.d, list(L.mults[:t]) + pairs)
    residual = canonicalize(L.n, L.d - 1, [m - 1 for m in L.mults[:t]] + list(tail))
    return trace, residual
