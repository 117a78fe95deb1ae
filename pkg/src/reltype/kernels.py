"""Selects the compiled kernels when available, else the Python fallback.

Set ``RELTYPE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
sub_mul = _pykernels.sub_mul
rref_mod_p = _pykernels.rref_mod_p

if not os.environ.get("RELTYPE_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        sub_mul = _ckernels.sub_mul
        rref_mod_p = _ckernels.rref_mod_p
        BACKEND = "cython"

__all__ = ["BACKEND", "sub_mul", "rref_mod_p"]
