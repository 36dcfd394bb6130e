"""Kernel selection: the compiled extension when built, NumPy otherwise.

Set HEEGEX_PURE=1 to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
count_zeros_mod = _kernels_py.count_zeros_mod

if os.environ.get("HEEGEX_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        count_zeros_mod = _compiled.count_zeros_mod
        BACKEND = "cython"
