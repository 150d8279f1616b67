"""Random instance generators for property sweeps, bounded by interpolation-matrix cost."""

from __future__ import annotations

from typing import Callable, Iterator

import numpy as np

from .core import LinearSystem, canonicalize
from .dimensions import n3_condition
from .picard import Effectivity, PicardClass, cremona, effectivity
from .sweep import matrix_cost

DEFAULT_BUDGET = 4 * 10**7


def _draw(rng: np.random.Generator, n_max: int, d_lo: int, d_hi: int, s_lo: Callable[[int], int],
          s_hi: Callable[[int], int], m_hi: Callable[[int], int]) -> LinearSystem | None:
    n = int(rng.integers(1, n_max + 1))
    d = int(rng.integers(d_lo, d_hi + 1))
    lo, hi = s_lo(n), s_hi(n)
    if lo > hi:
        return None
    s = int(rng.integers(lo, hi + 1))
    top = m_hi(d)
    if top < 1:
        return None
    return canonicalize(n, d, rng.integers(1, top + 1, size=s).tolist())


def sample(rng: np.random.Generator, count: int, draw: Callable[[np.random.Generator], LinearSystem | None],
           accept: Callable[[LinearSystem], bool], budget: int = DEFAULT_BUDGET,
           max_draws: int = 10**6) -> list[LinearSystem]:
    """``count`` distinct accepted systems whose matrix cost stays within ``budget``."""
    seen: dict[LinearSystem, None] = {}
    for _ in range(max_draws):
        if len(seen) == count:
            break
        L = draw(rng)
        if L is None or L in seen or matrix_cost(L) > budget or not accept(L):
            continue
        seen[L] = None
    if len(seen) < count:
        raise RuntimeError(f"only {len(seen)} of {count} instances found")
    return list(seen)


def few_points(rng: np.random.Generator, count: int, n_max: int = 5, d_max: int = 8,
               budget: int = DEFAULT_BUDGET) -> list[LinearSystem]:
    """Non-empty systems with ``1 <= s <= n+2``."""
    return sample(
        rng, count,
        lambda g: _draw(g, n_max, 1, d_max, lambda n: 1, lambda n: n + 2, lambda d: d),
        lambda L: effectivity(L) is Effectivity.NONEMPTY, budget,
    )


def many_points(rng: np.random.Generator, count: int, n_max: int = 5, d_max: int = 8, s_extra: int = 6,
                budget: int = DEFAULT_BUDGET) -> list[LinearSystem]:
    """Systems with ``s >= n+3`` satisfying ``sum m_i <= n d + b(L)``."""
    def draw(g):
        n = int(g.integers(1, n_max + 1))
        d = int(g.integers(2, d_max + 1))
        s = int(g.integers(n + 3, n + 3 + s_extra + 1))
        # bias towards small multiplicities so the sum bound is reachable
        cap = int(g.integers(1, d + 1))
        return canonicalize(n, d, g.integers(1, cap + 1, size=s).tolist())

    return sample(rng, count, draw, lambda L: n3_condition(L).satisfied, budget)


def general(rng: np.random.Generator, count: int, n_max: int = 5, d_max: int = 10, s_max: int = 20,
            budget: int = DEFAULT_BUDGET) -> list[LinearSystem]:
    """Any systems with ``m_i <= d``, ``s <= s_max``."""
    def draw(g):
        n = int(g.integers(1, n_max + 1))
        d = int(g.integers(1, d_max + 1))
        s = int(g.integers(0, s_max + 1))
        cap = int(g.integers(1, d + 1))
        return canonicalize(n, d, g.integers(1, cap + 1, size=s).tolist())

    return sample(rng, count, draw, lambda L: True, budget)


def cremona_pairs(rng: np.random.Generator, count: int, n_max: int = 4, d_max: int = 8, s_max: int = 9,
                  budget: int = DEFAULT_BUDGET) -> Iterator[tuple[LinearSystem, LinearSystem, tuple[int, ...]]]:
    """Systems with a Cremona move of nonzero ``c`` whose image has non-negative degree.

    Negative multiplicities of the image are fixed exceptional components and are dropped.
    """
    def transform(L: LinearSystem):
        base = tuple(sorted(rng.choice(L.s, size=L.n + 1, replace=False) + 1))
        img = cremona(PicardClass.from_system(L), base)
        return img, base

    found = 0
    seen = set()
    for _ in range(10**6):
        if found == count:
            return
        n = int(rng.integers(2, n_max + 1))
        d = int(rng.integers(1, d_max + 1))
        s = int(rng.integers(n + 1, max(n + 1, s_max) + 1))
        L = canonicalize(n, d, rng.integers(1, d + 1, size=s).tolist())
        if L.s < L.n + 1 or L in seen:
            continue
        img, base = transform(L)
        if img.degree < 0 or img.degree == L.d:
            continue
        M = canonicalize(n, img.degree, [max(m, 0) for m in img.mults])
        if max(matrix_cost(L), matrix_cost(M)) > budget:
            continue
        seen.add(L)
        found += 1
        yield L, M, base
    raise RuntimeError(f"only {found} of {count} Cremona instances found")
