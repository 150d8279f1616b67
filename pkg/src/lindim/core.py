"""Linear systems of hypersurfaces with assigned multiple points."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class ScopeError(ValueError):
    """A formula was asked for outside the range where it is proven."""


class EmptySystemError(ValueError):
    """An operation that needs a non-empty linear system got an empty one."""


def binomial(a: int, k: int) -> int:
    """Binomial coefficient that vanishes whenever ``a < k``, negative ``a`` included."""
    if k < 0:
        raise ValueError(f"binomial: k must be non-negative, got {k}")
    if a < k:
        return 0
    return math.comb(a, k)


@dataclass(frozen=True)
class LinearSystem:
    """``L_{n,d}(m_1, ..., m_s)`` with multiplicities sorted non-increasing.

    Build from raw input with :func:`canonicalize`; the constructor only
    validates.
    """

    n: int
    d: int
    mults: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {self.n}")
        if self.d < 0:
            raise ValueError(f"degree must be >= 0, got {self.d}")
        if any(m < 1 for m in self.mults):
            raise ValueError(f"multiplicities must be positive: {self.mults}")
        if any(a < b for a, b in zip(self.mults, self.mults[1:])):
            raise ValueError(f"multiplicities must be sorted non-increasing: {self.mults}")

    @property
    def s(self) -> int:
        return len(self.mults)

    def __str__(self):
        return f"L_{{{self.n},{self.d}}}({format_mults(self.mults)})"

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "mults": list(self.mults)}

    @classmethod
    def from_json(cls, obj: dict) -> "LinearSystem":
        return canonicalize(obj["n"], obj["d"], obj.get("mults", []))

    def key(self) -> str:
        return f"{self.n}:{self.d}:{','.join(map(str, self.mults))}"


def canonicalize(n: int, d: int, mults: Iterable[int] = ()) -> LinearSystem:
    """Sort multiplicities non-increasing and drop zeros.

    Multiplicities larger than ``d`` are kept: emptiness is decided elsewhere.
    """
    mults = list(mults)
    if any(m < 0 for m in mults):
        raise ValueError(f"negative multiplicity in {mults}")
    return LinearSystem(int(n), int(d), tuple(sorted((int(m) for m in mults if m), reverse=True)))


def format_mults(mults: Sequence[int]) -> str:
    """Compact exponent notation, e.g. ``5^3,4,3,2``."""
    parts = []
    i = 0
    while i < len(mults):
        j = i
        while j < len(mults) and mults[j] == mults[i]:
            j += 1
        parts.append(f"{mults[i]}^{j - i}" if j - i > 1 else str(mults[i]))
        i = j
    return ",".join(parts)


_TOKEN = re.compile(r"^\s*(\d+)\s*(?:[x\^]\s*(\d+))?\s*$")


def parse_mults(text: str) -> list[int]:
    """Parse ``5,5,5,4``, ``3x9`` or ``5^3,4,3,2`` into a flat list."""
    out: list[int] = []
    if not text or not text.strip():
        return out
    for token in text.split(","):
        m = _TOKEN.match(token)
        if m is None:
            raise ValueError(f"cannot parse multiplicity token {token!r}")
        value, count = int(m.group(1)), int(m.group(2) or 1)
        out.extend([value] * count)
    return out


@dataclass(frozen=True, order=True)
class MultiIndex:
    """Strictly increasing 1-based point indices; ``r = len - 1`` (``-1`` for the empty set)."""

    indices: tuple[int, ...] = ()

    def __post_init__(self):
        if any(i < 1 for i in self.indices):
            raise ValueError(f"point indices are 1-based: {self.indices}")
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError(f"indices must be strictly increasing: {self.indices}")

    @classmethod
    def of(cls, *indices: int) -> "MultiIndex":
        return cls(tuple(sorted(indices)))

    @property
    def r(self) -> int:
        return len(self.indices) - 1

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def check(self, s: int) -> None:
        if self.indices and self.indices[-1] > s:
            raise IndexError(f"index {self.indices[-1]} out of range for {s} points")

    def sort_key(self):
        return (len(self.indices), self.indices)
