"""Brute-force verifier for Rees ideals of equigenerated homogeneous ideals.

Everything here is plain linear algebra on the evaluation maps

    k[x]_d (x) k[T]_n  -->  k[x]_{d + n*delta},   x^a T^b  |->  x^a f^b,

whose kernels are the bigraded pieces Q_(d,n) of the Rees ideal.  The number
of minimal generators in bidegree (d,n) is

    dim Q_(d,n) - dim( x.Q_(d-1,n) + T.Q_(d,n-1) ).

No Groebner bases are used.  When every f_i is a monomial the maps split
along the fine Z^n grading; each fiber maps onto a single monomial, so the
kernels are spanned by differences and the rank of the products is a count
of connected components.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import EchelonModP, kernel_mod_p, kernel_qq, rank_qq
from .poly import Polynomial, RingContext, monomials_of_degree

__all__ = ["BidegreeTable", "rees_piece", "minimal_generator_bidegrees", "OracleError"]


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class BidegreeTable:
    """dim Q_(d,n) and minimal-generator counts for 0 <= d <= D_max, 1 <= n <= N_max."""

    D_max: int
    N_max: int
    characteristic: int
    dims: dict = field(default_factory=dict)
    fresh: dict = field(default_factory=dict)
    method: str = "linear"
    timings_ms: dict = field(default_factory=dict, compare=False)

    def generator_bidegrees(self) -> list[tuple[int, int]]:
        out = []
        for key in sorted(self.fresh):
            out += [key] * self.fresh[key]
        return out

    def rt_lower_bound(self) -> int:
        return max([1] + [n for (_, n), c in self.fresh.items() if c])

    def saturated(self, known: Sequence[tuple[int, int]] | None = None) -> bool:
        """No fresh generators in the last two T-strata, and every bidegree in
        ``known`` (for instance from a Groebner run) lies inside the bounds."""
        top = {self.N_max, self.N_max - 1}
        if any(c for (_, n), c in self.fresh.items() if n in top):
            return False
        if known is not None:
            return all(d <= self.D_max and n <= self.N_max for d, n in known)
        return True

    def rt(self) -> int | None:
        return self.rt_lower_bound() if self.saturated() else None


# ---------------------------------------------------------------------------
# input handling


def _prepare(f: Sequence[Polynomial], field_char: int | None):
    f = list(f)
    if not f:
        raise OracleError("need at least one generator")
    ring = f[0].ring
    if any(not g.ring.same_ring(ring) for g in f):
        raise OracleError("generators must share one ring")
    if ring.base_ideal:
        raise OracleError("the oracle covers polynomial base rings only")
    xs = list(ring.x_block)
    if ring.weights and any(w != 1 for w in ring.weights):
        raise OracleError("the oracle uses the standard grading")
    degs = set()
    for g in f:
        if not g:
            raise OracleError("zero generator")
        if g.variables_used() - set(xs):
            raise OracleError("generators must involve only x-variables")
        if not g.is_homogeneous_in(xs):
            raise OracleError(f"non-homogeneous generator {g}")
        degs.add(g.degree_in(xs))
    if len(degs) != 1:
        raise OracleError("generators must all have the same degree")
    p = ring.field.characteristic if field_char is None else field_char
    polys = []
    for g in f:
        terms = {}
        for e, c in g.as_dict().items():
            c = ring.field.to_signed(c)
            if p:
                c = Fraction(c)
                if c.denominator % p == 0:
                    raise OracleError(f"coefficient {c} is not defined modulo {p}")
                c = c.numerator * pow(c.denominator, -1, p) % p
            else:
                c = Fraction(c)
            terms[tuple(e[i] for i in xs)] = c
        polys.append(terms)
    return ring, xs, degs.pop(), polys, p


def _mul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(u + v for u, v in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    if p:
        return {e: c % p for e, c in out.items() if c % p}
    return {e: c for e, c in out.items() if c}


class _Powers:
    """Memoized products f^b."""

    def __init__(self, polys, nx, p):
        self.polys = polys
        self.p = p
        self.cache = {(0,) * len(polys): {(0,) * nx: 1}}

    def __call__(self, b):
        b = tuple(b)
        got = self.cache.get(b)
        if got is None:
            i = max(k for k, v in enumerate(b) if v)
            prev = list(b)
            prev[i] -= 1
            got = self.cache[b] = _mul(self(prev), self.polys[i], self.p)
        return got


def _evaluation_matrix(xmonos, tmonos, target, powers, p):
    """Rows = target x-monomials, columns = (a, b) pairs in row-major order."""
    tindex = {e: i for i, e in enumerate(target)}
    nb = len(tmonos)
    if p:
        M = np.zeros((len(target), len(xmonos) * nb), dtype=np.int64)
    else:
        M = [[Fraction(0)] * (len(xmonos) * nb) for _ in target]
    for ib, b in enumerate(tmonos):
        fb = powers(b)
        for ia, a in enumerate(xmonos):
            col = ia * nb + ib
            for e, c in fb.items():
                r = tindex[tuple(u + v for u, v in zip(a, e))]
                if p:
                    M[r, col] = c
                else:
                    M[r][col] = Fraction(c)
    return M


# ---------------------------------------------------------------------------
# public API


def rees_piece(f: Sequence[Polynomial], d: int, n: int, *, characteristic: int | None = None, ring: RingContext | None = None) -> list[Polynomial]:
    """Basis of the Rees-ideal piece Q_(d,n) as polynomials in k[x, T].

    ``ring`` is the target k[x, T] (default: a fresh Rees ring over the ring of f).
    """
    from .blowup import rees_ring

    base, xs, delta, polys, p = _prepare(f, characteristic)
    nx, m = len(xs), len(polys)
    ring = ring or rees_ring(base, m)
    if d < 0 or n < 0:
        return []
    xmonos = monomials_of_degree(nx, d)
    tmonos = monomials_of_degree(m, n)
    target = monomials_of_degree(nx, d + n * delta)
    powers = _Powers(polys, nx, p)
    M = _evaluation_matrix(xmonos, tmonos, target, powers, p)
    ncols = len(xmonos) * len(tmonos)
    if p:
        K, _ = kernel_mod_p(M, p)
        rows = [[int(v) for v in r] for r in K]
    else:
        rows, _ = kernel_qq(M, ncols)
    nb = len(tmonos)
    out = []
    full_x = ring.x_block
    full_t = ring.T_block
    for r in rows:
        terms = {}
        for col, c in enumerate(r):
            if not c:
                continue
            a, b = xmonos[col // nb], tmonos[col % nb]
            e = [0] * ring.nvars
            for i, v in zip(full_x, a):
                e[i] = v
            for i, v in zip(full_t, b):
                e[i] = v
            terms[tuple(e)] = ring.field(c if p == 0 else (c if c <= p // 2 else c - p))
        out.append(Polynomial(ring, terms))
    return out


def minimal_generator_bidegrees(
    f: Sequence[Polynomial],
    D_max: int,
    N_max: int,
    *,
    characteristic: int | None = None,
    method: str = "auto",
) -> BidegreeTable:
    """Dimensions of Q_(d,n) and minimal-generator counts within the bounds.

    ``characteristic`` overrides the field of f (rational inputs may be
    reduced modulo a prime).  ``method`` is "auto", "linear" or "monomial".
    """
    if D_max < 0 or N_max < 1:
        raise OracleError("bounds must satisfy D_max >= 0 and N_max >= 1")
    t0 = time.perf_counter()
    base, xs, delta, polys, p = _prepare(f, characteristic)
    monomial = all(len(g) == 1 for g in polys)
    if method == "auto":
        method = "monomial" if monomial else "linear"
    if method == "monomial" and not monomial:
        raise OracleError("monomial method needs monomial generators")
    if method == "monomial":
        dims, fresh = _monomial_table(polys, len(xs), D_max, N_max)
    elif p:
        dims, fresh = _linear_table_mod_p(polys, len(xs), delta, D_max, N_max, p)
    else:
        dims, fresh = _linear_table_qq(polys, len(xs), delta, D_max, N_max)
    return BidegreeTable(
        D_max, N_max, p, dims, fresh, method,
        {"oracle": (time.perf_counter() - t0) * 1000.0},
    )


# ---------------------------------------------------------------------------
# general linear-algebra path


def _shift_maps(nx, m, d, n):
    """Column maps for multiplication by x_i from (d-1,n) and by T_j from (d,n-1)."""
    xm = monomials_of_degree(nx, d)
    tm = monomials_of_degree(m, n)
    xi = {e: i for i, e in enumerate(xm)}
    ti = {e: i for i, e in enumerate(tm)}
    nb = len(tm)
    xmaps, tmaps = [], []
    if d >= 1:
        lower = monomials_of_degree(nx, d - 1)
        for i in range(nx):
            idx = np.array([xi[tuple(v + (k == i) for k, v in enumerate(a))] for a in lower])
            xmaps.append((idx[:, None] * nb + np.arange(nb)[None, :]).ravel())
    if n >= 2:
        lower = monomials_of_degree(m, n - 1)
        for j in range(m):
            idx = np.array([ti[tuple(v + (k == j) for k, v in enumerate(b))] for b in lower])
            tmaps.append((np.arange(len(xm))[:, None] * nb + idx[None, :]).ravel())
    return xmaps, tmaps


def _linear_table_mod_p(polys, nx, delta, D, N, p):
    m = len(polys)
    powers = _Powers(polys, nx, p)
    dims, fresh = {}, {}
    prev_stratum: dict[int, np.ndarray] = {}
    for n in range(1, N + 1):
        stratum: dict[int, np.ndarray] = {}
        tmonos = monomials_of_degree(m, n)
        for d in range(0, D + 1):
            xmonos = monomials_of_degree(nx, d)
            target = monomials_of_degree(nx, d + n * delta)
            M = _evaluation_matrix(xmonos, tmonos, target, powers, p)
            K, _ = kernel_mod_p(M, p)
            ncols = M.shape[1]
            dim = K.shape[0]
            dims[(d, n)] = dim
            stratum[d] = K.astype(np.float64)
            if dim == 0:
                fresh[(d, n)] = 0
                continue
            xmaps, tmaps = _shift_maps(nx, m, d, n)
            ech = EchelonModP(ncols, p)
            sources = []
            if d >= 1 and stratum.get(d - 1) is not None and stratum[d - 1].shape[0]:
                sources += [(stratum[d - 1], cm) for cm in xmaps]
            if n >= 2 and prev_stratum.get(d) is not None and prev_stratum[d].shape[0]:
                sources += [(prev_stratum[d], cm) for cm in tmaps]
            for B, cmap in sources:
                if ech.rank >= dim:
                    break
                for s in range(0, B.shape[0], 1024):
                    if ech.rank >= dim:
                        break
                    blk = B[s : s + 1024]
                    P = np.zeros((blk.shape[0], ncols))
                    P[:, cmap] = blk
                    ech.add_rows(P, limit=dim)
            fresh[(d, n)] = dim - ech.rank
        prev_stratum = stratum
    return dims, fresh


def _linear_table_qq(polys, nx, delta, D, N):
    m = len(polys)
    powers = _Powers(polys, nx, 0)
    dims, fresh = {}, {}
    prev_stratum: dict[int, list] = {}
    for n in range(1, N + 1):
        stratum: dict[int, list] = {}
        tmonos = monomials_of_degree(m, n)
        for d in range(0, D + 1):
            xmonos = monomials_of_degree(nx, d)
            target = monomials_of_degree(nx, d + n * delta)
            M = _evaluation_matrix(xmonos, tmonos, target, powers, 0)
            ncols = len(xmonos) * len(tmonos)
            K, _ = kernel_qq(M, ncols)
            dims[(d, n)] = len(K)
            stratum[d] = K
            if not K:
                fresh[(d, n)] = 0
                continue
            xmaps, tmaps = _shift_maps(nx, m, d, n)
            rows = []
            if d >= 1:
                for cm in xmaps:
                    for v in stratum[d - 1]:
                        r = [Fraction(0)] * ncols
                        for k, c in zip(cm, v):
                            r[k] = c
                        rows.append(r)
            if n >= 2:
                for cm in tmaps:
                    for v in prev_stratum.get(d, []):
                        r = [Fraction(0)] * ncols
                        for k, c in zip(cm, v):
                            r[k] = c
                        rows.append(r)
            fresh[(d, n)] = len(K) - (rank_qq(rows) if rows else 0)
        prev_stratum = stratum
    return dims, fresh


# ---------------------------------------------------------------------------
# monomial path


def _monomial_table(polys, nx, D, N):
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    m = len(polys)
    alpha = np.array([next(iter(g)) for g in polys], dtype=np.int64)
    dims, fresh = {}, {}
    for n in range(1, N + 1):
        B = np.array(monomials_of_degree(m, n), dtype=np.int64).reshape(-1, m)
        img = B @ alpha
        for d in range(0, D + 1):
            A = np.array(monomials_of_degree(nx, d), dtype=np.int64).reshape(-1, nx)
            na, nb = A.shape[0], B.shape[0]
            mu = (A[:, None, :] + img[None, :, :]).reshape(na * nb, nx)
            _, fiber = np.unique(mu, axis=0, return_inverse=True)
            fiber = fiber.ravel()
            nel = na * nb
            nfib = int(fiber.max()) + 1
            dims[(d, n)] = nel - nfib
            # label nodes: x_i (if d >= 1) and T_j (if n >= 2), one per fiber
            L = nx + m
            ea = np.repeat(A, nb, axis=0)
            eb = np.tile(B, (na, 1))
            src, dst = [], []
            elems = np.arange(nel)
            if d >= 1:
                for i in range(nx):
                    sel = ea[:, i] > 0
                    src.append(elems[sel])
                    dst.append(nel + fiber[sel] * L + i)
            if n >= 2:
                for j in range(m):
                    sel = eb[:, j] > 0
                    src.append(elems[sel])
                    dst.append(nel + fiber[sel] * L + nx + j)
            size = nel + nfib * L
            if src:
                s = np.concatenate(src)
                t = np.concatenate(dst)
            else:
                s = t = np.zeros(0, dtype=np.int64)
            g = coo_matrix((np.ones(len(s), dtype=np.int8), (s, t)), shape=(size, size))
            _, comp = connected_components(g, directed=False)
            ncomp = len(np.unique(comp[:nel]))
            fresh[(d, n)] = ncomp - nfib
    return dims, fresh
