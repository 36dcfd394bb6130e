"""Vectorized NumPy versions of the compiled kernels."""
from __future__ import annotations

import numpy as np

_CHUNK = 1 << 20


def count_zeros_mod(gram, lin, const: int, modulus: int) -> int:
    """Count x in (Z/M)^r with x^T G x / 2 + lin.x + const = 0 mod M (G even diagonal)."""
    g = np.asarray(gram, dtype=np.int64) % modulus
    half_diag = (np.diag(np.asarray(gram, dtype=np.int64)) // 2) % modulus
    upper = np.triu(g, 1)
    b = np.asarray(lin, dtype=np.int64) % modulus
    r = g.shape[0]
    total = modulus ** r
    count = 0
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        x = np.stack(np.unravel_index(idx, (modulus,) * r), axis=1).astype(np.int64)
        val = (x * x % modulus) @ half_diag % modulus
        val += ((x @ upper) % modulus * x % modulus).sum(axis=1)
        val += x @ b
        val += const
        count += int(np.count_nonzero(val % modulus == 0))
    return count
