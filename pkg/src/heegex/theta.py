"""Representation numbers of negative-definite lattices.

theta(s, nu) = #{lambda in nu + K : -q(lambda) = s}.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .arith import rational_sqrt
from .lattice import DiscriminantElement, Lattice


def theta_rank1(N, r, s) -> int:
    """Number of integers c with N (c + r)^2 = s.

    K = Z rho with q(rho) = -N and the coset nu = r rho + K, r taken mod 1.
    """
    N, r, s = Fraction(N), Fraction(r) % 1, Fraction(s)
    if N <= 0:
        raise ValueError("N must be positive")
    if s < 0:
        return 0
    if s == 0:
        return int(r == 0)
    try:
        u = rational_sqrt(s / N)
    except ValueError:
        return 0
    return sum(1 for x in (u - r, -u - r) if x.denominator == 1)


def _cholesky(gram: Sequence[Sequence[Fraction]]):
    """Rational LDL^T of a positive definite matrix: returns (mu, diag)."""
    n = len(gram)
    mu = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(gram[i][j]) - sum(mu[i][k] * mu[j][k] * diag[k] for k in range(j))
            mu[i][j] = s / diag[j]
        diag[i] = Fraction(gram[i][i]) - sum(mu[i][k] ** 2 * diag[k] for k in range(i))
        if diag[i] <= 0:
            raise ValueError("lattice is not negative definite")
    return mu, diag


def theta_negdef(K: Lattice, nu: DiscriminantElement | Sequence | None, s) -> int:
    """Count vectors of norm -s in nu + K by Fincke-Pohst enumeration."""
    if not K.is_negative_definite():
        raise ValueError(f"signature {K.signature} is not negative definite")
    s = Fraction(s)
    if s < 0:
        return 0
    n = K.rank
    if nu is None:
        shift = [Fraction(0)] * n
    elif isinstance(nu, DiscriminantElement):
        shift = list(nu.lift())
    else:
        shift = [Fraction(x) for x in nu]
    if (s + K.q(shift)).denominator != 1:
        return 0
    # positive definite form A = -gram; want (x + shift)^T A (x + shift) = 2 s
    a = [[-Fraction(x) for x in row] for row in K.gram]
    mu, diag = _cholesky(a)
    target = 2 * s
    count = 0
    y = [Fraction(0)] * n

    def rec(i: int, remaining: Fraction):
        nonlocal count
        # centre of coordinate i given the already fixed coordinates i+1..n-1
        c = shift[i] + sum(mu[j][i] * y[j] for j in range(i + 1, n))
        radius = math.sqrt(float(remaining / diag[i])) + 1e-9
        lo = math.ceil(-float(c) - radius)
        hi = math.floor(-float(c) + radius)
        for x in range(lo, hi + 1):
            z = c + x
            rest = remaining - diag[i] * z * z
            if rest < 0:
                continue
            y[i] = shift[i] + x
            if i == 0:
                if rest == 0:
                    count += 1
            else:
                rec(i - 1, rest)
        y[i] = Fraction(0)

    rec(n - 1, target)
    return count
