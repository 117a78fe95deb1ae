"""Exact linear algebra for the oracle: row echelon forms and kernels.

Prime fields use float64 matrices holding residues; block updates go
through BLAS matrix products, which are exact as long as every dot product
stays below 2**53.  Rationals use plain ``Fraction`` elimination.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import kernels

__all__ = ["EchelonModP", "rref_mod_p", "kernel_mod_p", "rref_qq", "kernel_qq", "rank_qq"]

_EXACT = float(2**53)


def _inner_chunk(p: int) -> int:
    """Largest inner dimension whose dot products of residues stay exact."""
    k = int(_EXACT // ((p - 1) ** 2))
    if k < 1:
        raise ValueError(f"prime {p} too large for float64 block elimination")
    return k


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    chunk = _inner_chunk(p)
    k = a.shape[1]
    if k <= chunk:
        return np.mod(a @ b, p)
    out = np.zeros((a.shape[0], b.shape[1]))
    for s in range(0, k, chunk):
        out = np.mod(out + np.mod(a[:, s : s + chunk] @ b[s : s + chunk], p), p)
    return out


class EchelonModP:
    """Incrementally maintained reduced row echelon basis of a row space mod p.

    Rows are added in blocks; every block is first reduced against the
    current basis by one matrix product, the remainder is brought to RREF
    (recursively, with smaller blocks) and merged back.  The basis is kept
    fully reduced, so the final result is the canonical RREF.
    """

    _BASE = 32

    def __init__(self, ncols: int, p: int, block: int = 512):
        self.n = ncols
        self.p = p
        self.block = max(block, self._BASE)
        self._E = np.zeros((min(64, max(ncols, 1)), ncols))
        self._piv: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._piv)

    @property
    def full(self) -> bool:
        return self.rank == self.n

    def _grow(self, extra: int):
        need = self.rank + extra
        if need > self._E.shape[0]:
            cap = max(need, 2 * self._E.shape[0])
            E = np.zeros((min(cap, max(self.n, need)), self.n))
            E[: self.rank] = self._E[: self.rank]
            self._E = E

    def reduce(self, B: np.ndarray) -> np.ndarray:
        """Reduce rows of B against the basis (B is float64 residues)."""
        if not self.rank:
            return B
        E = self._E[: self.rank]
        return np.mod(B - _matmul_mod(B[:, self._piv], E, self.p), self.p)

    def _merge(self, R: np.ndarray, piv: list[int]):
        k = self.rank
        if k:
            E = self._E[:k]
            self._E[:k] = np.mod(E - _matmul_mod(E[:, piv], R, self.p), self.p)
        self._grow(len(piv))
        self._E[k : k + len(piv)] = R
        self._piv.extend(piv)

    def add_rows(self, B, limit: int | None = None) -> int:
        """Add rows; returns how many of them were new (rank increase).

        With ``limit``, stops as soon as the rank reaches it (the caller knows
        the rows live in a space of that dimension).
        """
        B = np.mod(np.asarray(B, dtype=np.float64), self.p)
        if B.ndim != 2 or B.shape[1] != self.n:
            raise ValueError("row block has the wrong shape")
        before = self.rank
        cap = self.n if limit is None else min(limit, self.n)
        for s in range(0, B.shape[0], self.block):
            if self.rank >= cap:
                break
            chunk = self.reduce(B[s : s + self.block])
            chunk = chunk[np.any(chunk != 0, axis=1)]
            if not chunk.shape[0]:
                continue
            R, piv = self._local_rref(chunk)
            if piv:
                self._merge(R, piv)
        return self.rank - before

    def _local_rref(self, chunk: np.ndarray):
        if chunk.shape[0] <= self._BASE or self.block <= self._BASE:
            a = chunk.astype(np.int64)
            piv = kernels.rref_mod_p(a, self.p)
            return a[: len(piv)].astype(np.float64), list(piv)
        sub = EchelonModP(self.n, self.p, block=max(self._BASE, self.block // 8))
        sub.add_rows(chunk)
        return sub._E[: sub.rank], list(sub._piv)

    def rref(self) -> tuple[np.ndarray, list[int]]:
        """Rows sorted by pivot column, as int64, and the pivot list."""
        order = np.argsort(self._piv, kind="stable")
        E = self._E[: self.rank][order].astype(np.int64)
        return E, [self._piv[i] for i in order]


def rref_mod_p(A, p: int) -> tuple[np.ndarray, list[int]]:
    A = np.asarray(A)
    ech = EchelonModP(A.shape[1], p)
    if A.shape[0]:
        ech.add_rows(A)
    return ech.rref()


def kernel_mod_p(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Right kernel basis of A mod p, one row per free column.

    Row j of the result is e_free[j] minus the pivot-column entries of that
    free column, so the free columns of the basis form an identity block.
    """
    A = np.asarray(A)
    n = A.shape[1]
    E, piv = rref_mod_p(A, p)
    free = [j for j in range(n) if j not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.int64)
    if free:
        K[np.arange(len(free)), free] = 1
        if piv:
            K[:, piv] = np.mod(-E[:, free].T, p)
    return K, free


# rationals ------------------------------------------------------------------


def rref_qq(rows) -> tuple[list[list[Fraction]], list[int]]:
    """RREF over QQ; pivots at the first nonzero column, smallest row index."""
    a = [[Fraction(v) for v in r] for r in rows]
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    piv = []
    r = 0
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                ar = a[r]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], ar)]
        piv.append(c)
        r += 1
    return a[:r], piv


def rank_qq(rows) -> int:
    return len(rref_qq(rows)[1])


def kernel_qq(rows, ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    E, piv = rref_qq(rows) if rows else ([], [])
    pivset = set(piv)
    free = [j for j in range(ncols) if j not in pivset]
    K = []
    for j in free:
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -E[r][j]
        K.append(v)
    return K, free
