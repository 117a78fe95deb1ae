# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; must agree exactly with _pykernels."""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef int64_t _MAXP = 2147483647


def sub_mul(list fm, list fc, Py_ssize_t start, list gm, list gc, object shift, object c, object p):
    """Return F[start:] - c * x^shift * G by a linear merge of the sorted term lists."""
    cdef Py_ssize_t i = start, j = 0, nf = len(fm), ng = len(gm)
    cdef list om = [], oc = []
    cdef object a, b, v
    cdef int64_t pp, cc, fv, gv, r
    if p and p <= _MAXP:
        pp = p
        cc = c % p
        while i < nf and j < ng:
            a = fm[i]
            b = gm[j] + shift
            if a > b:
                om.append(a)
                oc.append(fc[i])
                i += 1
            elif a < b:
                gv = gc[j]
                r = (cc * gv) % pp
                if r:
                    om.append(b)
                    oc.append(pp - r)
                j += 1
            else:
                fv = fc[i]
                gv = gc[j]
                r = (fv - (cc * gv) % pp) % pp
                if r < 0:
                    r += pp
                if r:
                    om.append(a)
                    oc.append(r)
                i += 1
                j += 1
        while j < ng:
            gv = gc[j]
            r = (cc * gv) % pp
            if r:
                om.append(gm[j] + shift)
                oc.append(pp - r)
            j += 1
    else:
        while i < nf and j < ng:
            a = fm[i]
            b = gm[j] + shift
            if a > b:
                om.append(a)
                oc.append(fc[i])
                i += 1
            elif a < b:
                v = -(c * gc[j])
                if p:
                    v = v % p
                if v:
                    om.append(b)
                    oc.append(v)
                j += 1
            else:
                v = fc[i] - c * gc[j]
                if p:
                    v = v % p
                if v:
                    om.append(a)
                    oc.append(v)
                i += 1
                j += 1
        while j < ng:
            v = -(c * gc[j])
            if p:
                v = v % p
            if v:
                om.append(gm[j] + shift)
                oc.append(v)
            j += 1
    if i < nf:
        om.extend(fm[i:])
        oc.extend(fc[i:])
    return om, oc


def rref_mod_p(cnp.ndarray[int64_t, ndim=2] a, object p):
    """Reduced row echelon form modulo p, in place; returns the pivot columns.

    Pivots are chosen at the first nonzero column, smallest row index.
    """
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, col, i, k, piv
    cdef int64_t pp = p, inv, f, t
    cdef int64_t[:, :] m = a
    if pp > 3037000499:
        raise OverflowError("prime too large for the compiled kernel")
    for i in range(rows):
        for k in range(cols):
            t = m[i, k] % pp
            if t < 0:
                t += pp
            m[i, k] = t
    pivots = []
    for col in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(col, cols):
                t = m[r, k]
                m[r, k] = m[piv, k]
                m[piv, k] = t
        inv = pow(int(m[r, col]), -1, p)
        for k in range(col, cols):
            m[r, k] = (m[r, k] * inv) % pp
        for i in range(rows):
            if i == r:
                continue
            f = m[i, col]
            if f:
                for k in range(col, cols):
                    if m[r, k]:
                        t = (m[i, k] - f * m[r, k]) % pp
                        if t < 0:
                            t += pp
                        m[i, k] = t
        pivots.append(col)
        r += 1
    return pivots
