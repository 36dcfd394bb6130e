# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels."""
from libc.stdlib cimport malloc, free


def count_zeros_mod(gram, lin, long long const, long long modulus):
    """Count x in (Z/M)^r with x^T G x / 2 + lin.x + const = 0 mod M (G even diagonal)."""
    cdef int r = len(gram)
    cdef long long M = modulus
    cdef long long *g = <long long *> malloc(r * r * sizeof(long long))
    cdef long long *gx = <long long *> malloc(r * sizeof(long long))
    cdef long long *step = <long long *> malloc(r * sizeof(long long))
    cdef long long *x = <long long *> malloc(r * sizeof(long long))
    cdef int i, j
    cdef long long val, count = 0
    try:
        for i in range(r):
            for j in range(r):
                g[i * r + j] = (<long long> gram[i][j]) % M
            # F(x + e_i) - F(x) = (Gx)_i + G_ii / 2 + lin_i
            step[i] = ((<long long> gram[i][i]) // 2 + <long long> lin[i]) % M
            gx[i] = 0
            x[i] = 0
        val = const % M
        if val < 0:
            val += M
        while True:
            if val == 0:
                count += 1
            i = 0
            while i < r:
                val = (val + gx[i] + step[i]) % M
                if val < 0:
                    val += M
                for j in range(r):
                    gx[j] = (gx[j] + g[j * r + i]) % M
                x[i] += 1
                if x[i] < M:
                    break
                x[i] = 0
                i += 1
            if i == r:
                break
    finally:
        free(g)
        free(gx)
        free(step)
        free(x)
    return count
