from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given
from hypothesis import strategies as st

from reltype import _pykernels
from reltype.linalg import EchelonModP, kernel_mod_p, kernel_qq, rank_qq, rref_mod_p, rref_qq


def _reference_rref(A, p):
    a = np.mod(np.array(A, dtype=np.int64), p)
    piv = _pykernels.rref_mod_p(a, p)
    return a[: len(piv)], list(piv)


def test_small_rref():
    E, piv = rref_mod_p([[2, 4], [1, 2]], 7)
    assert piv == [0]
    assert E.tolist() == [[1, 2]]
    K, free = kernel_mod_p([[1, 2]], 7)
    assert free == [1] and K.tolist() == [[5, 1]]


@given(
    shape=st.tuples(st.integers(1, 40), st.integers(1, 25)),
    rank=st.integers(0, 25),
    block=st.integers(2, 16),
    seed=st.integers(0, 10**6),
    p=st.sampled_from([7, 32003]),
)
def test_blocked_matches_reference(shape, rank, block, seed, p):
    rng = np.random.default_rng(seed)
    m, n = shape
    r = min(rank, m, n)
    A = (rng.integers(0, p, (m, r)) @ rng.integers(0, p, (r, n))) % p
    ech = EchelonModP(n, p, block=block)
    for i in range(0, m, 5):
        ech.add_rows(A[i : i + 5])
    E, piv = ech.rref()
    E0, piv0 = _reference_rref(A, p)
    assert piv == piv0
    assert np.array_equal(E, E0)
    K, free = kernel_mod_p(A, p)
    assert not np.any((A @ K.T) % p)
    assert len(free) == n - len(piv)


def test_limit_stops_early():
    p = 101
    A = np.eye(6, dtype=np.int64)
    ech = EchelonModP(6, p, block=2)
    ech.add_rows(A, limit=3)
    assert ech.rank >= 3


def test_qq_against_sympy():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [Fraction(1, 2), 0, 1, 0]]
    E, piv = rref_qq(rows)
    M, spiv = sympy.Matrix(rows).rref()
    assert tuple(piv) == spiv
    assert [[sympy.Rational(v.numerator, v.denominator) for v in r] for r in E] == M.tolist()[: len(piv)]
    assert rank_qq(rows) == 2
    K, free = kernel_qq(rows, 4)
    for v in K:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)
