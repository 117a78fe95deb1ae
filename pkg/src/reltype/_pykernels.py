"""Pure-Python versions of the hot kernels.

These are the reference implementations; ``_ckernels`` (Cython) must agree
with them exactly.  Monomials are packed integers whose natural integer order
is the term order, so shifting a polynomial by a monomial is adding an int.
"""

from __future__ import annotations

import numpy as np


def sub_mul(fm, fc, start, gm, gc, shift, c, p):
    """Return ``F[start:] - c * x^shift * G`` as (monomials, coefficients).

    Inputs are parallel lists sorted by descending monomial; ``p == 0`` means
    exact rational coefficients, otherwise residues modulo ``p``.
    """
    acc = dict(zip(fm[start:], fc[start:]))
    get = acc.get
    if p:
        for m, a in zip(gm, gc):
            m += shift
            v = (get(m, 0) - c * a) % p
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
    else:
        for m, a in zip(gm, gc):
            m += shift
            v = get(m, 0) - c * a
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
    monos = sorted(acc, reverse=True)
    return monos, [acc[m] for m in monos]


def rref_mod_p(a, p):
    """Reduced row echelon form of an int64 matrix modulo ``p``, in place.

    Pivots are chosen at the first nonzero column, smallest row index.
    Returns the list of pivot columns.
    """
    a %= p
    rows, cols = a.shape
    pivots = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, col])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), -1, p)
        a[r, col:] = a[r, col:] * inv % p
        others = np.flatnonzero(a[:, col])
        others = others[others != r]
        if others.size:
            factors = a[others, col].reshape(-1, 1)
            a[others, col:] = (a[others, col:] - factors * a[r, col:]) % p
        pivots.append(col)
        r += 1
    return pivots
