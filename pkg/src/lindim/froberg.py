"""Truncated Hilbert series of ideals generated by powers of general linear forms."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence

from .core import LinearSystem


@dataclass(frozen=True)
class TruncatedSeries:
    raw: tuple[int, ...]
    coefficients: tuple[int, ...]
    truncation_index: int | None

    def to_json(self) -> dict:
        return {"raw": list(self.raw), "truncated": list(self.coefficients), "truncation_index": self.truncation_index}


def raw_series(n: int, gen_degrees: Sequence[int], D: int) -> list[int]:
    """Coefficients ``a_0..a_D`` of ``prod(1 - t^e) / (1 - t)^(n+1)``."""
    if D < 0:
        raise ValueError(f"truncation degree must be >= 0, got {D}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if any(e < 1 for e in gen_degrees):
        raise ValueError(f"generator degrees must be positive: {list(gen_degrees)}")
    poly = [0] * (D + 1)
    poly[0] = 1
    for e in gen_degrees:
        for i in range(D, e - 1, -1):
            poly[i] -= poly[i - e]
    for _ in range(n + 1):
        poly = list(accumulate(poly))
    return poly


def truncated_series(n: int, gen_degrees: Sequence[int], D: int) -> TruncatedSeries:
    """Expand to order ``D`` and zero everything from the first non-positive coefficient on."""
    raw = raw_series(n, gen_degrees, D)
    cut = next((i for i, a in enumerate(raw) if a <= 0), None)
    kept = raw if cut is None else raw[:cut] + [0] * (D + 1 - cut)
    return TruncatedSeries(tuple(raw), tuple(kept), cut)


def apolar_degrees(L: LinearSystem) -> list[int]:
    """Generator degrees ``d + 1 - m_i`` of the apolar ideal in degree d."""
    if any(m > L.d for m in L.mults):
        raise ValueError(f"{L}: apolarity needs every m_i <= d")
    return [L.d + 1 - m for m in L.mults]


def froberg_prediction(L: LinearSystem) -> int:
    """Series-predicted dimension: the truncated coefficient ``b_d`` minus one."""
    return truncated_series(L.n, apolar_degrees(L), L.d).coefficients[L.d] - 1
