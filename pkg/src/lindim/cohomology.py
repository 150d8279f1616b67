"""Cohomology of strict transforms on the iterated blow-up along linear base cycles.

Closed-form combinatorics only: valid for non-empty systems with at most n+2 points.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .baselocus import positive_subsets, split_hyperplanes
from .core import EmptySystemError, LinearSystem, MultiIndex, ScopeError, binomial
from .dimensions import linear_expected_dimension, linear_virtual_dimension
from .picard import Effectivity, effectivity


@dataclass(frozen=True)
class StrictTransform:
    """``D_(r) = dH - sum k_I E_I`` over index sets with ``|I| <= r+1`` and ``k_I > 0``."""

    level: int
    base: LinearSystem
    k_coeffs: dict[MultiIndex, int]

    def to_json(self) -> dict:
        return {
            "r": self.level,
            "degree": self.base.d,
            "coeffs": [{"indices": list(I.indices), "k": k} for I, k in sorted(self.k_coeffs.items(), key=lambda t: t[0].sort_key())],
        }


def _max_level(L: LinearSystem) -> int:
    return min(L.n, L.s) - 1


def strict_transform(L: LinearSystem, r: int) -> StrictTransform:
    if not 0 <= r <= _max_level(L):
        raise ValueError(f"level {r} outside [0, {_max_level(L)}]")
    coeffs = {MultiIndex(tuple(i + 1 for i in I)): K for I, K in positive_subsets(L, max_size=r + 1)}
    return StrictTransform(r, L, coeffs)


def cycle_sums(L: LinearSystem) -> dict[int, int]:
    """``rho -> sum over I(rho) of binom(n + k_I - rho - 1, n)`` for ``0 <= rho <= min(n,s)-1``."""
    sums: dict[int, int] = defaultdict(int)
    for I, K in positive_subsets(L, max_size=min(L.n, L.s)):
        rho = len(I) - 1
        sums[rho] += binomial(L.n + K - rho - 1, L.n)
    return dict(sums)


def h1_contributions(L: LinearSystem) -> dict[int, int]:
    """Signed contribution ``(-1)^(r-1) sum_{I(r)} binom(n+k-r-1, n)`` of the r-cycles to ``h^1``, for r >= 1."""
    return {r: (-1) ** (r - 1) * v for r, v in sorted(cycle_sums(L).items()) if r >= 1}


def partial_linear_sum(L: LinearSystem, r: int) -> int:
    """The lvdim alternating sum truncated at ``rho <= r`` (without the trailing -1)."""
    total = binomial(L.n + L.d, L.n)
    for rho, v in cycle_sums(L).items():
        if rho <= r:
            total += (-1) ** (rho + 1) * v
    return total


def euler_characteristic(L: LinearSystem) -> int:
    """``chi`` of the top strict transform, ``lvdim + 1``; meaningful even for empty systems."""
    return linear_virtual_dimension(L) + 1


def _require_scope(L: LinearSystem) -> None:
    if L.s > L.n + 2:
        raise ScopeError(f"{L}: cohomology formulas need s <= n+2, got s={L.s}")
    if effectivity(L) is not Effectivity.NONEMPTY:
        raise EmptySystemError(f"{L} is empty")


def _top_cohomology(sums: dict[int, int], r: int, rbar: int) -> int:
    return sum((-1) ** (rho - r - 1) * sums.get(rho, 0) for rho in range(r + 1, rbar + 1))


@dataclass(frozen=True)
class CohomologyTable:
    """``levels[r]`` maps ``i -> h^i(D_(r))`` for the positive degrees; ``h^0`` is level independent."""

    h0: int
    rbar: int
    levels: tuple[dict[int, int], ...]
    residual: LinearSystem | None = None

    def h(self, i: int, r: int) -> int:
        if i == 0:
            return self.h0
        if r < 0:
            raise ValueError(f"negative level {r}")
        # beyond the last level there is nothing left to blow up
        return self.levels[r].get(i, 0) if r < len(self.levels) else 0

    def to_json(self) -> dict:
        out = {
            "h0": self.h0,
            "rbar": self.rbar,
            "levels": [{"r": r, "h": {str(i): v for i, v in sorted(h.items())}} for r, h in enumerate(self.levels)],
        }
        if self.residual is not None:
            out["residual"] = self.residual.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CohomologyTable":
        levels = tuple({int(i): v for i, v in lv["h"].items()} for lv in obj["levels"])
        residual = LinearSystem.from_json(obj["residual"]) if "residual" in obj else None
        return cls(obj["h0"], obj["rbar"], levels, residual)


def cohomology_table(L: LinearSystem) -> CohomologyTable:
    """Full table for a non-empty system with ``s <= n+2``.

    At every level only ``h^0`` and ``h^{r+1}`` can be nonzero. When the base
    locus contains hyperplanes, the top level ``n-1`` is read off the residual
    divisor left after splitting them off, whose base locus sits in level ``n-2``.
    """
    _require_scope(L)
    sums = cycle_sums(L)
    rbar = max(sums, default=-1)
    h0 = linear_expected_dimension(L) + 1
    levels = [{r + 1: _top_cohomology(sums, r, rbar)} for r in range(_max_level(L) + 1)]
    residual = None
    if L.n >= 2 and rbar == L.n - 1:
        residual = split_hyperplanes(L).residual_system()
        rsums = cycle_sums(residual)
        rrbar = max(rsums, default=-1)
        levels[L.n - 1] = {L.n: _top_cohomology(rsums, L.n - 2, rrbar)}
    return CohomologyTable(h0, rbar, tuple(levels), residual)


def h1_speciality(L: LinearSystem) -> int:
    """``h^1`` of the system on projective space: alternating sum over cycles of dimension >= 1."""
    _require_scope(L)
    return sum(h1_contributions(L).values())


def _check_cone_scope(n: int, d: int, s: int) -> None:
    if n < 1 or d < 0:
        raise ValueError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    if not 0 <= s <= n + 1:
        raise ScopeError(f"cone formulas need 0 <= s <= n+1, got s={s}, n={n}")


def cones_h1(n: int, d: int, s: int) -> int:
    """``h^1`` of degree-d hypersurfaces with s points of multiplicity d."""
    _check_cone_scope(n, d, s)
    return sum((-1) ** i * binomial(n + d - i, n) * binomial(s, i) for i in range(2, s + 1))


def cones_h0(n: int, d: int, s: int) -> int:
    """Cones over the span of the s points: ``binom(n-s+d, d)``, or 0 once ``s = n+1``."""
    _check_cone_scope(n, d, s)
    if s == n + 1:
        return 0
    return binomial(n - s + d, d)
