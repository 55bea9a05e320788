"""Elimination kernel selection.

The integer fraction-free Gauss-Jordan step is the hot loop of every exact
elimination in rational mode. A compiled version is used when available;
set FLATUNITARY_PURE_PYTHON=1 to force the pure-Python twin. Both produce
bit-identical results.
"""

import os

from ._elim_py import ff_gauss_jordan_ring
from ._elim_py import ff_gauss_jordan_int as _ff_int_py

if os.environ.get("FLATUNITARY_PURE_PYTHON") == "1":
    BACKEND = "python"
    ff_gauss_jordan_int = _ff_int_py
else:
    try:
        from ._elim_cy import ff_gauss_jordan_int

        BACKEND = "cython"
    except ImportError:
        BACKEND = "python"
        ff_gauss_jordan_int = _ff_int_py

__all__ = ["BACKEND", "ff_gauss_jordan_int", "ff_gauss_jordan_ring"]
