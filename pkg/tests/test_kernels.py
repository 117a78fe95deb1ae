from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reltype import _pykernels, kernels

ck = pytest.importorskip("reltype._ckernels")

PRIMES = [3, 101, 32003, 2147483647, 2305843009213693951]


@st.composite
def term_lists(draw, p):
    monos = sorted(draw(st.sets(st.integers(0, 60), max_size=12)), reverse=True)
    if p:
        coeffs = [draw(st.integers(1, p - 1)) for _ in monos]
    else:
        coeffs = [draw(st.fractions(-9, 9, max_denominator=5).filter(bool)) for _ in monos]
    return monos, coeffs


@given(data=st.data(), p=st.sampled_from(PRIMES + [0]))
def test_sub_mul_backends_agree(data, p):
    fm, fc = data.draw(term_lists(p))
    gm, gc = data.draw(term_lists(p))
    shift = data.draw(st.integers(0, 20))
    c = data.draw(st.integers(1, p - 1)) if p else data.draw(st.fractions(-5, 5, max_denominator=4))
    start = data.draw(st.integers(0, len(fm)))
    args = (fm, fc, start, gm, gc, shift, c, p)
    om, oc = _pykernels.sub_mul(*args)
    assert (om, oc) == ck.sub_mul(*args)
    assert om == sorted(set(om), reverse=True)
    assert all(oc)
    # dense reference
    ref = {m: v for m, v in zip(fm[start:], fc[start:])}
    for m, v in zip(gm, gc):
        ref[m + shift] = ref.get(m + shift, 0) - c * v
    ref = {m: (v % p if p else v) for m, v in ref.items()}
    assert dict(zip(om, oc)) == {m: v for m, v in ref.items() if v}


@given(
    p=st.sampled_from(PRIMES[:4]),
    shape=st.tuples(st.integers(1, 8), st.integers(1, 8)),
    data=st.data(),
)
def test_rref_backends_agree(p, shape, data):
    vals = data.draw(st.lists(st.integers(-(10**6), 10**6), min_size=shape[0] * shape[1], max_size=shape[0] * shape[1]))
    A = np.array(vals, dtype=np.int64).reshape(shape)
    a1, a2 = A.copy(), A.copy()
    piv1 = _pykernels.rref_mod_p(a1, p)
    piv2 = ck.rref_mod_p(a2, p)
    assert list(piv1) == list(piv2)
    assert np.array_equal(a1, a2)


def test_selected_backend():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.BACKEND == "cython"
    assert kernels.sub_mul is ck.sub_mul


def test_fraction_coefficients():
    om, oc = ck.sub_mul([3, 1], [Fraction(1, 2), 1], 0, [1], [1], 0, Fraction(1, 1), 0)
    assert (om, oc) == ([3], [Fraction(1, 2)])


def test_pure_python_fallback_end_to_end():
    import os
    import subprocess
    import sys

    code = (
        "from reltype import kernels; from reltype.cli import main; "
        "assert kernels.BACKEND == 'python'; "
        "raise SystemExit(main(['rt', '--family', 'six-points']))"
    )
    env = dict(os.environ, RELTYPE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert "rt: 3" in out.stdout
