"""Actual dimension of a linear system at random points over a large prime field."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from math import comb

import numpy as np
from sympy import nextprime, prevprime

from ..core import EmptySystemError, LinearSystem, MultiIndex
from .arith import MAX_PRIME_BITS, MontgomeryField
from .matrices import apolarity_matrix, exponents, interpolation_matrix

SEED_ENV = "LINDIM_SEED"


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


@dataclass(frozen=True)
class OracleConfig:
    prime_bits: int = 62
    trials: int = 3
    seed: int = field(default_factory=default_seed)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 3 <= self.prime_bits <= MAX_PRIME_BITS:
            raise ValueError(f"prime_bits must lie in [3, {MAX_PRIME_BITS}], got {self.prime_bits}")

    def to_json(self) -> dict:
        return {"prime_bits": self.prime_bits, "trials": self.trials, "seed": self.seed}


@dataclass(frozen=True)
class OracleResult:
    dim: int
    rank: int
    per_trial: tuple[int, ...]
    primes: tuple[int, ...]
    agreed: bool
    method: str = "interpolation"
    retried: bool = False

    def to_json(self) -> dict:
        return {
            "dim": self.dim, "rank": self.rank, "per_trial": list(self.per_trial),
            "primes": [str(p) for p in self.primes], "agreed": self.agreed,
            "method": self.method, "retried": self.retried,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "OracleResult":
        return cls(obj["dim"], obj["rank"], tuple(obj["per_trial"]), tuple(int(p) for p in obj["primes"]),
                   obj["agreed"], obj.get("method", "interpolation"), obj.get("retried", False))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def random_prime(rng: np.random.Generator, bits: int) -> int:
    lo, hi = 1 << (bits - 1), 1 << bits
    p = int(nextprime(int(rng.integers(lo, hi))))
    return p if p < hi else int(prevprime(hi))


def _random_rows(rng: np.random.Generator, p: int, count: int, width: int) -> list[list[int]]:
    """``count`` pairwise distinct random vectors in ``F_p^width``."""
    for _ in range(100):
        rows = rng.integers(0, p, size=(count, width), dtype=np.uint64).tolist()
        if len({tuple(r) for r in rows}) == count:
            return rows
    raise RuntimeError(f"could not draw {count} distinct points over F_{p}")


def _trial_field(L: LinearSystem, cfg: OracleConfig, trial: int) -> tuple[np.random.Generator, MontgomeryField]:
    rng = trial_rng(cfg.seed, trial)
    p = random_prime(rng, cfg.prime_bits)
    if p <= L.d:
        raise ValueError(f"prime {p} must exceed the degree {L.d}; raise prime_bits")
    return rng, MontgomeryField(p)


def _interpolation_trial(L: LinearSystem, cfg: OracleConfig, trial: int) -> tuple[int, int]:
    rng, F = _trial_field(L, cfg, trial)
    points = _random_rows(rng, F.p, L.s, L.n)
    return F.rank(interpolation_matrix(F, L.n, L.d, L.mults, points)), F.p


def _apolarity_trial(L: LinearSystem, cfg: OracleConfig, trial: int) -> tuple[int, int]:
    rng, F = _trial_field(L, cfg, trial)
    forms = _random_rows(rng, F.p, L.s, L.n + 1)
    return F.rank(apolarity_matrix(F, L.n, L.d, L.mults, forms)), F.p


def _run(L: LinearSystem, cfg: OracleConfig, trial_fn, method: str) -> OracleResult:
    ncols = comb(L.n + L.d, L.n)

    def round_(start: int):
        out = [trial_fn(L, cfg, t) for t in range(start, start + cfg.trials)]
        return [ncols - r - 1 for r, _ in out], [p for _, p in out]

    dims, primes = round_(0)
    agreed = len(set(dims)) == 1
    retried = False
    if not agreed:
        # a special configuration only raises the dimension; a fresh round confirms the minimum
        more, more_primes = round_(cfg.trials)
        retried = True
        agreed = len(set(more)) == 1 and min(more) == min(dims + more)
        dims += more
        primes += more_primes
    dim = min(dims)
    return OracleResult(dim, ncols - dim - 1, tuple(dims), tuple(primes), agreed, method, retried)


def interpolation_dimension(L: LinearSystem, cfg: OracleConfig | None = None) -> OracleResult:
    """Dimension from the rank of the derivative conditions at random points."""
    return _run(L, cfg or OracleConfig(), _interpolation_trial, "interpolation")


def apolarity_dimension(L: LinearSystem, cfg: OracleConfig | None = None) -> OracleResult:
    """Dimension from the degree-d piece of the ideal of powers ``l_i^(d+1-m_i)`` of random linear forms."""
    if any(m > L.d for m in L.mults):
        raise ValueError(f"{L}: apolarity needs every m_i <= d")
    return _run(L, cfg or OracleConfig(), _apolarity_trial, "apolarity")


def _nullspace(F: MontgomeryField, A: np.ndarray, ncols: int) -> list[list[int]]:
    """Plain-residue basis of the kernel of a Montgomery-form matrix."""
    rank, pivots = F.rref(A)
    pivot_set = set(pivots.tolist())
    basis = []
    for free in (c for c in range(ncols) if c not in pivot_set):
        v = [0] * ncols
        v[free] = 1
        for i, c in enumerate(pivots.tolist()):
            v[c] = (-F.from_mont(A[i, free])) % F.p
        basis.append(v)
    return basis


def _poly_mul(a: list[int], b: list[int], top: int, p: int) -> list[int]:
    out = [0] * (top + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[: top + 1 - i]):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _vanishing_order(L: LinearSystem, coeffs: list[int], q: list[int], v: list[int], p: int) -> int:
    # order at t=0 of F(q + t v), F homogeneous with monomials x_0^(d-|b|) x^b
    d = L.d
    lin = [[qj % p, vj % p] for qj, vj in zip(q, v)]
    powers = []
    for j in range(L.n + 1):
        row = [[1]]
        for _ in range(d):
            row.append(_poly_mul(row[-1], lin[j], d, p))
        powers.append(row)
    g = [0] * (d + 1)
    for c, beta in zip(coeffs, exponents(L.n, d).tolist()):
        if not c:
            continue
        term = powers[0][d - sum(beta)]
        for j, e in enumerate(beta, 1):
            term = _poly_mul(term, powers[j][e], d, p)
        for i, t in enumerate(term):
            g[i] = (g[i] + c * t) % p
    return next((i for i, x in enumerate(g) if x), d + 1)


def cycle_multiplicity_probe(L: LinearSystem, I: MultiIndex, cfg: OracleConfig | None = None) -> int:
    """Vanishing order of a general member at a general point of the span of the points in ``I``.

    Per trial: kernel of the interpolation matrix, a random member, a random
    point of the cycle and a random line through it. Minimum over trials.
    """
    cfg = cfg or OracleConfig()
    I.check(L.s)
    if len(I) == 0:
        raise ValueError("the probe needs a non-empty index set")
    best = None
    for trial in range(cfg.trials):
        rng, F = _trial_field(L, cfg, trial)
        points = _random_rows(rng, F.p, L.s, L.n)
        A = interpolation_matrix(F, L.n, L.d, L.mults, points)
        basis = _nullspace(F, A, A.shape[1])
        if not basis:
            raise EmptySystemError(f"{L} is empty")
        weights = rng.integers(0, F.p, size=len(basis), dtype=np.uint64).tolist()
        member = [sum(w * b[c] for w, b in zip(weights, basis)) % F.p for c in range(A.shape[1])]
        lam = rng.integers(1, F.p, size=len(I), dtype=np.uint64).tolist()
        q = [sum(lam)] + [sum(l * points[i - 1][j] for l, i in zip(lam, I)) for j in range(L.n)]
        v = rng.integers(0, F.p, size=L.n + 1, dtype=np.uint64).tolist()
        order = _vanishing_order(L, member, q, v, F.p)
        best = order if best is None else min(best, order)
    return best
