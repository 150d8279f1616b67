"""Condition matrices for fat points, in Montgomery form.

Columns are the degree-d monomials ``x_0^(d-|b|) x^b`` indexed by their
affine exponent ``b`` (chart ``x_0 = 1``), so both builders share a basis.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numba as nb
import numpy as np

from .arith import MontgomeryField, montmul


@lru_cache(maxsize=256)
def exponents(nvars: int, max_degree: int, exact: bool = False) -> np.ndarray:
    """Exponent vectors in ``nvars`` variables of total degree ``<= max_degree`` (or ``==`` when ``exact``)."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], left: int):
        if len(prefix) == nvars - 1:
            if exact:
                out.append(prefix + (left,))
            else:
                out.extend(prefix + (e,) for e in range(left + 1))
            return
        for e in range(left + 1):
            rec(prefix + (e,), left - e)

    if nvars < 1:
        raise ValueError("need at least one variable")
    if max_degree < 0:
        arr = np.zeros((0, nvars), dtype=np.int64)
    else:
        rec((), max_degree)
        arr = np.array(out, dtype=np.int64).reshape(-1, nvars)
    arr.setflags(write=False)
    return arr


@nb.njit(cache=True)
def _taylor_rows(cols, alphas, powers, binoms, out, row0, p, pneg, one):
    # entry: coefficient of (x-a)^alpha in x^beta, prod_j C(beta_j, alpha_j) a_j^(beta_j - alpha_j)
    ncols, n = cols.shape
    for r in range(alphas.shape[0]):
        for c in range(ncols):
            v = one
            for j in range(n):
                b = cols[c, j]
                a = alphas[r, j]
                if b < a:
                    v = np.uint64(0)
                    break
                v = montmul(v, binoms[b, a], p, pneg)
                v = montmul(v, powers[j, b - a], p, pneg)
            out[row0 + r, c] = v


@nb.njit(cache=True)
def _apolar_rows(cols, gammas, coeffs, fact, invfact, e, out, row0, p, pneg):
    # entry: coefficient of x^mu in x^gamma * l^e, multinomial(e; nu) prod c_j^nu_j with nu = mu - gamma
    ncols, n1 = cols.shape
    for r in range(gammas.shape[0]):
        for c in range(ncols):
            v = fact[e]
            for j in range(n1):
                nu = cols[c, j] - gammas[r, j]
                if nu < 0:
                    v = np.uint64(0)
                    break
                v = montmul(v, invfact[nu], p, pneg)
                v = montmul(v, coeffs[j, nu], p, pneg)
            out[row0 + r, c] = v


def _powers(F: MontgomeryField, values, top: int) -> np.ndarray:
    table = np.empty((len(values), top + 1), dtype=np.uint64)
    for j, a in enumerate(values):
        x = 1
        for e in range(top + 1):
            table[j, e] = F.to_mont(x)
            x = x * a % F.p
    return table


def interpolation_matrix(F: MontgomeryField, n: int, d: int, mults, points) -> np.ndarray:
    """Rows: all partial derivatives of order ``< m_i`` at the affine point ``points[i]``."""
    cols = exponents(n, d)
    nrows = sum(comb(n + m - 1, n) for m in mults)
    A = np.zeros((nrows, len(cols)), dtype=np.uint64)
    binoms = np.zeros((d + 1, d + 1), dtype=np.uint64)
    for b in range(d + 1):
        for a in range(b + 1):
            binoms[b, a] = F.to_mont(comb(b, a))
    one = np.uint64(F.to_mont(1))
    row = 0
    for m, pt in zip(mults, points):
        alphas = exponents(n, m - 1)
        _taylor_rows(cols, alphas, _powers(F, pt, d), binoms, A, row, F.np_p, F.pneg, one)
        row += len(alphas)
    return A


def apolarity_matrix(F: MontgomeryField, n: int, d: int, mults, forms) -> np.ndarray:
    """Rows: ``x^gamma * l_i^(d+1-m_i)`` for ``|gamma| = m_i - 1``, expanded on the degree-d monomials."""
    affine = exponents(n, d)
    cols = np.empty((len(affine), n + 1), dtype=np.int64)
    cols[:, 0] = d - affine.sum(axis=1)
    cols[:, 1:] = affine
    nrows = sum(comb(n + m - 1, n) for m in mults)
    A = np.zeros((nrows, len(cols)), dtype=np.uint64)
    fact = [1] * (d + 1)
    for i in range(1, d + 1):
        fact[i] = fact[i - 1] * i % F.p
    fact_m = F.to_mont_array(fact)
    invfact_m = F.to_mont_array([pow(f, -1, F.p) for f in fact])
    row = 0
    for m, form in zip(mults, forms):
        gammas = exponents(n + 1, m - 1, exact=True)
        e = d + 1 - m
        _apolar_rows(cols, gammas, _powers(F, form, e), fact_m, invfact_m, e, A, row, F.np_p, F.pneg)
        row += len(gammas)
    return A
