"""Picard lattice of the blow-up of P^n at s points.

Classes are ``dH - sum m_i E_i`` stored as ``(degree, mults)``. The pairing is
``<H,H> = n-1``, ``<E_i,E_j> = -delta_ij``, ``<H,E_i> = 0``; the standard
Cremona transformation based at n+1 of the points is the reflection in the root
``H - E_{i_1} - ... - E_{i_{n+1}}`` and so preserves it.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import LinearSystem, canonicalize


@dataclass(frozen=True)
class PicardClass:
    n: int
    degree: int
    mults: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.mults)

    @classmethod
    def from_system(cls, L: LinearSystem) -> "PicardClass":
        return cls(L.n, L.d, tuple(L.mults))

    @classmethod
    def hyperplane(cls, n: int, s: int) -> "PicardClass":
        return cls(n, 1, (0,) * s)

    @classmethod
    def exceptional(cls, n: int, s: int, i: int) -> "PicardClass":
        """``E_i`` (1-based), i.e. degree 0 and multiplicity -1 at point i."""
        mults = [0] * s
        mults[i - 1] = -1
        return cls(n, 0, tuple(mults))

    @classmethod
    def anticanonical(cls, n: int, s: int) -> "PicardClass":
        return cls(n, n + 1, (n - 1,) * s)

    def to_system(self) -> LinearSystem:
        if self.degree < 0 or any(m < 0 for m in self.mults):
            raise ValueError(f"{self} has negative coefficients; not a linear system")
        return canonicalize(self.n, self.degree, self.mults)

    def to_json(self) -> dict:
        return {"degree": self.degree, "mults": list(self.mults)}

    def __str__(self):
        terms = [f"{self.degree}H"]
        for i, m in enumerate(self.mults, 1):
            if m:
                terms.append(f"{'-' if m > 0 else '+'}{abs(m) if abs(m) != 1 else ''}E{i}")
        return "".join(terms)


def _check_lattice(A: PicardClass, B: PicardClass) -> None:
    if A.n != B.n or A.s != B.s:
        raise ValueError(f"classes live on different lattices: (n={A.n}, s={A.s}) vs (n={B.n}, s={B.s})")


def pairing(A: PicardClass, B: PicardClass) -> int:
    _check_lattice(A, B)
    return (A.n - 1) * A.degree * B.degree - sum(a * b for a, b in zip(A.mults, B.mults))


def cremona(A: PicardClass, S: Iterable[int]) -> PicardClass:
    """Standard Cremona transformation based at the 1-based point subset ``S``."""
    S = sorted(set(S))
    if len(S) != A.n + 1:
        raise ValueError(f"Cremona base needs n+1 = {A.n + 1} points, got {len(S)}")
    if S[0] < 1 or S[-1] > A.s:
        raise IndexError(f"Cremona base {S} out of range for {A.s} points")
    c = sum(A.mults[i - 1] for i in S) - (A.n - 1) * A.degree
    mults = list(A.mults)
    for i in S:
        mults[i - 1] -= c
    return PicardClass(A.n, A.degree - c, tuple(mults))


def _largest(A: PicardClass) -> list[int]:
    order = sorted(range(A.s), key=lambda i: (-A.mults[i], i))
    return sorted(i + 1 for i in order[: A.n + 1])


def is_cremona_reduced(A: PicardClass) -> bool:
    if A.s < A.n + 1:
        return True
    top = sorted(A.mults, reverse=True)[: A.n + 1]
    return sum(top) <= (A.n - 1) * A.degree


class Verdict(str, enum.Enum):
    REDUCED = "reduced"
    NEGATIVE_DEGREE = "negative-degree"


@dataclass(frozen=True)
class CremonaMove:
    """One step of a reduction: a Cremona move (``base`` set) or a normalization (``base`` empty)."""

    base: tuple[int, ...]
    c: int
    result: PicardClass
    normalized: tuple[int, ...] = ()

    def to_json(self) -> dict:
        if not self.base:
            return {"normalize": list(self.normalized), "result": self.result.to_json()}
        return {"base": list(self.base), "c": self.c, "result": self.result.to_json()}


@dataclass(frozen=True)
class CremonaReduction:
    start: PicardClass
    reduced: PicardClass
    moves: tuple[CremonaMove, ...]
    verdict: Verdict

    @property
    def bases(self) -> list[tuple[int, ...]]:
        return [m.base for m in self.moves if m.base]

    def to_json(self) -> dict:
        return {
            "start": self.start.to_json(),
            "reduced": self.reduced.to_json(),
            "verdict": self.verdict.value,
            "moves": [m.to_json() for m in self.moves],
        }


def _normalize(A: PicardClass) -> tuple[PicardClass, tuple[int, ...]]:
    # a negative multiplicity is a fixed exceptional component; removing it keeps h^0
    negative = tuple(i + 1 for i, m in enumerate(A.mults) if m < 0)
    if not negative:
        return A, ()
    return PicardClass(A.n, A.degree, tuple(max(m, 0) for m in A.mults)), negative


def cremona_reduce(A: PicardClass) -> CremonaReduction:
    """Apply Cremona moves on the n+1 largest multiplicities while they lower the degree.

    Terminates since each move drops the degree by ``c >= 1``; stops with
    ``NEGATIVE_DEGREE`` as soon as the degree goes below zero.
    """
    moves: list[CremonaMove] = []
    current = A
    while True:
        if current.degree < 0:
            return CremonaReduction(A, current, tuple(moves), Verdict.NEGATIVE_DEGREE)
        current, fixed = _normalize(current)
        if fixed:
            moves.append(CremonaMove((), 0, current, fixed))
        if current.s < current.n + 1:
            break
        base = _largest(current)
        c = sum(current.mults[i - 1] for i in base) - (current.n - 1) * current.degree
        if c <= 0:
            break
        current = cremona(current, base)
        moves.append(CremonaMove(tuple(base), c, current))
    return CremonaReduction(A, current, tuple(moves), Verdict.REDUCED)


def weyl_orbit(n: int, s: int, depth: int = 4) -> dict[PicardClass, int]:
    """Breadth-first closure of ``{E_1..E_s}`` under all Cremona moves, up to ``depth`` moves.

    Returns each class with the number of moves needed to reach it.
    """
    if s < n + 1:
        raise ValueError(f"Weyl orbit needs s >= n+1, got s={s}, n={n}")
    seen = {PicardClass.exceptional(n, s, i): 0 for i in range(1, s + 1)}
    frontier = deque(seen)
    bases = list(itertools.combinations(range(1, s + 1), n + 1))
    for level in range(1, depth + 1):
        nxt = deque()
        while frontier:
            F = frontier.popleft()
            for S in bases:
                G = cremona(F, S)
                if G not in seen:
                    seen[G] = level
                    nxt.append(G)
        frontier = nxt
        if not frontier:
            break
    return seen


@dataclass(frozen=True)
class WeylComponent:
    divisor: PicardClass
    multiplicity: int
    depth: int

    @property
    def trivial(self) -> bool:
        """``<D,F> = 0``: F meets the base locus condition only at the boundary."""
        return self.multiplicity == 0

    def to_json(self) -> dict:
        return {"class": self.divisor.to_json(), "mult": self.multiplicity, "depth": self.depth}


def weyl_base_locus(D: PicardClass, depth: int = 4, include_exceptional: bool = False) -> list[WeylComponent]:
    """Orbit divisors ``F`` with ``<D,F> <= 0``; each lies in the base locus ``-<D,F>`` times."""
    orbit = weyl_orbit(D.n, D.s, depth)
    found = []
    for F, level in orbit.items():
        if level == 0 and not include_exceptional:
            continue
        p = pairing(D, F)
        if p <= 0:
            found.append(WeylComponent(F, -p, level))
    found.sort(key=lambda c: (c.depth, -c.multiplicity, c.divisor.degree, tuple(-m for m in c.divisor.mults)))
    return found


class Effectivity(str, enum.Enum):
    NONEMPTY = "nonempty"
    EMPTY = "empty"
    UNKNOWN = "unknown"


def _basic_conditions(n: int, d: int, mults: Sequence[int]) -> bool:
    return all(m <= d for m in mults) and sum(mults) <= n * d


def effectivity(L: LinearSystem) -> Effectivity:
    """Decide non-emptiness: exact for s <= n+2, best effort beyond."""
    if any(m > L.d for m in L.mults):
        return Effectivity.EMPTY
    if _basic_conditions(L.n, L.d, L.mults):
        return Effectivity.NONEMPTY
    if L.s <= L.n + 2:
        return Effectivity.EMPTY
    red = cremona_reduce(PicardClass.from_system(L))
    if red.verdict is Verdict.NEGATIVE_DEGREE:
        return Effectivity.EMPTY
    R = red.reduced
    if any(m > R.degree for m in R.mults):
        return Effectivity.EMPTY
    if _basic_conditions(R.n, R.degree, R.mults):
        return Effectivity.NONEMPTY
    if sum(1 for m in R.mults if m) <= R.n + 2:
        return Effectivity.EMPTY
    return Effectivity.UNKNOWN
