"""Montgomery arithmetic modulo a prime below 2^62 and dense elimination kernels.

Matrices hold residues in Montgomery form ``x R mod p`` with ``R = 2^64``.
Scaling every entry by ``R`` does not change the rank, and row reduction
keeps the representation consistent, so the kernels never leave it.
"""

from __future__ import annotations

import numba as nb
import numpy as np

_LO = np.uint64(0xFFFFFFFF)
_32 = np.uint64(32)
MAX_PRIME_BITS = 62


@nb.njit(inline="always", cache=True)
def mul128(a, b):
    a0 = a & _LO
    a1 = a >> _32
    b0 = b & _LO
    b1 = b >> _32
    p00 = a0 * b0
    p01 = a0 * b1
    p10 = a1 * b0
    p11 = a1 * b1
    mid = (p00 >> _32) + (p01 & _LO) + (p10 & _LO)
    lo = (mid << _32) | (p00 & _LO)
    hi = p11 + (p01 >> _32) + (p10 >> _32) + (mid >> _32)
    return hi, lo


@nb.njit(inline="always", cache=True)
def montmul(a, b, p, pneg):
    hi, lo = mul128(a, b)
    m = lo * pneg
    mh, _ = mul128(m, p)
    t = hi + mh + (np.uint64(1) if lo != np.uint64(0) else np.uint64(0))
    if t >= p:
        t -= p
    return t


@nb.njit(inline="always", cache=True)
def _plain_inverse(x, p):
    a = np.int64(x)
    b = np.int64(p)
    x0 = np.int64(1)
    x1 = np.int64(0)
    while b != 0:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
    if x0 < 0:
        x0 += np.int64(p)
    return np.uint64(x0)


@nb.njit(inline="always", cache=True)
def mont_inverse(x, p, pneg, r3):
    # plain inverse of x R is x^-1 R^-1; multiplying by R^3 (one R is eaten) gives x^-1 R
    return montmul(_plain_inverse(x, p), r3, p, pneg)


@nb.njit(cache=True)
def _eliminate(A, p, pneg, r3, reduce_up):
    m, n = A.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                t = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = t
        g = mont_inverse(A[r, c], p, pneg, r3)
        for j in range(c, n):
            A[r, j] = montmul(A[r, j], g, p, pneg)
        lo = 0 if reduce_up else r + 1
        for i in range(lo, m):
            if i == r:
                continue
            f = A[i, c]
            if f == 0:
                continue
            for j in range(c, n):
                t = montmul(f, A[r, j], p, pneg)
                v = A[i, j]
                A[i, j] = v - t if v >= t else v + p - t
        pivots[r] = c
        r += 1
    return r, pivots[:r]


@nb.njit(cache=True)
def rank_inplace(A, p, pneg, r3):
    return _eliminate(A, p, pneg, r3, False)[0]


@nb.njit(cache=True)
def rref_inplace(A, p, pneg, r3):
    return _eliminate(A, p, pneg, r3, True)


class MontgomeryField:
    """Constants for Montgomery arithmetic modulo an odd prime ``p < 2^62``."""

    def __init__(self, p: int):
        if p < 3 or p % 2 == 0 or p.bit_length() > MAX_PRIME_BITS:
            raise ValueError(f"need an odd prime below 2^{MAX_PRIME_BITS}, got {p}")
        self.p = p
        self.R = 1 << 64
        self.pneg = np.uint64((-pow(p, -1, self.R)) % self.R)
        self.r3 = np.uint64(pow(self.R, 3, p))
        self.np_p = np.uint64(p)
        self._rinv = pow(self.R, -1, p)

    def to_mont(self, x: int) -> int:
        return (int(x) % self.p) * self.R % self.p

    def from_mont(self, x: int) -> int:
        return int(x) * self._rinv % self.p

    def to_mont_array(self, values) -> np.ndarray:
        return np.array([self.to_mont(v) for v in values], dtype=np.uint64)

    def rank(self, A: np.ndarray) -> int:
        """Rank of a Montgomery-form matrix; ``A`` is overwritten."""
        if A.size == 0:
            return 0
        return int(rank_inplace(A, self.np_p, self.pneg, self.r3))

    def rref(self, A: np.ndarray) -> tuple[int, np.ndarray]:
        """Reduced row echelon form in place; returns rank and pivot columns."""
        if A.size == 0:
            return 0, np.empty(0, dtype=np.int64)
        r, piv = rref_inplace(A, self.np_p, self.pneg, self.r3)
        return int(r), piv.copy()
