"""Exact p-adic local densities of inhomogeneous quadratic polynomials.

For F(x) = Q(x + gamma) - t with Q(x) = x^T A x / 2 on Z_p^r, compute

    delta_p = lim_{f -> oo} #{x mod p^f : F(x) = 0 mod p^f} / p^{f (r-1)}

without enumerating p^{f r} points. The form is split into Jordan components, each
component's linear part is absorbed by completing the square or, when that fails,
makes the component equidistributed on a fixed ideal. What remains is a recursion
over residues mod p of the few non-unimodular coordinates.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

INF = float("inf")


def vp(x, p: int) -> float:
    """p-adic valuation of an integer or Fraction (inf for zero)."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def mod_p(x: Fraction, p: int) -> int:
    """Reduction mod p of a p-integral rational."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError("not p-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


# ---------------------------------------------------------------- Jordan splitting


@lru_cache(maxsize=None)
def jordan(gram: tuple, p: int) -> tuple:
    """Split a symmetric Z_(p) matrix into 1x1 and 2x2 blocks.

    Returns a tuple of (block, columns) where ``columns`` are vectors in the original
    coordinates whose Gram matrix is ``block`` and distinct blocks are orthogonal.
    The change of basis lies in GL_r(Z_(p)).
    """
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]  # basis[i] = vector i
    active = list(range(n))
    out = []

    def add_to(i, j, f):
        # e_i <- e_i + f e_j
        basis[i] = [a + f * b for a, b in zip(basis[i], basis[j])]
        for k in range(n):
            m[i][k] += f * m[j][k]
        for k in range(n):
            m[k][i] += f * m[k][j]

    while active:
        best = min(((vp(m[i][j], p), i != j, i, j) for i in active for j in active if j >= i),
                   default=None)
        v, offdiag, i, j = best
        if v == INF:
            # remaining form is zero; cannot happen for non-degenerate input
            raise ValueError("degenerate form")
        if offdiag and p != 2:
            add_to(i, j, Fraction(1))
            offdiag = False
        if not offdiag:
            piv = m[i][i]
            for k in active:
                if k != i and m[i][k]:
                    add_to(k, i, -m[i][k] / piv)
            out.append((((piv,),), (tuple(basis[i]),)))
            active.remove(i)
        else:
            a, b, c = m[i][i], m[i][j], m[j][j]
            det = a * c - b * b
            for k in active:
                if k in (i, j):
                    continue
                x, y = m[i][k], m[j][k]
                if x or y:
                    cx = (c * x - b * y) / det
                    cy = (a * y - b * x) / det
                    if cx:
                        add_to(k, i, -cx)
                    if cy:
                        add_to(k, j, -cy)
            out.append((((a, b), (b, c)), (tuple(basis[i]), tuple(basis[j]))))
            active.remove(i)
            active.remove(j)
    return tuple(out)


# ---------------------------------------------------------------- components


def _q(block, y) -> Fraction:
    if len(block) == 1:
        return block[0][0] * y[0] * y[0] / 2
    (a, b), (_, c) = block
    return (a * y[0] * y[0] + c * y[1] * y[1]) / 2 + b * y[0] * y[1]


def _apply(block, y) -> tuple:
    if len(block) == 1:
        return (block[0][0] * y[0],)
    (a, b), (_, c) = block
    return (a * y[0] + b * y[1], b * y[0] + c * y[1])


def _solve(block, lin) -> tuple:
    if len(block) == 1:
        return (lin[0] / block[0][0],)
    (a, b), (_, c) = block
    det = a * c - b * b
    return ((c * lin[0] - b * lin[1]) / det, (a * lin[1] - b * lin[0]) / det)


def _block_val(block, p) -> float:
    return min(vp(x, p) for row in block for x in row)


def _is_unimodular(block, p) -> bool:
    """A invertible mod p (gradient of the component can be a unit)."""
    if len(block) == 1:
        return vp(block[0][0], p) == 0
    (a, b), (_, c) = block
    return vp(a * c - b * b, p) == 0


def _linear_floor(block, lin, p) -> float | None:
    """If the component's values are uniform on p^fl Z_p return fl, else None
    (in which case the square can be completed inside Z_p)."""
    s = _solve(block, lin)
    if all(vp(x, p) >= 0 for x in s):
        return None
    beta = min(vp(x, p) for x in lin)
    if len(block) == 1 and p == 2:
        e = vp(block[0][0], p)
        if beta == e - 1:
            return e
    return beta


def _dist_mod_p(block, lin, p) -> tuple[int, ...]:
    """Counts of values of Q(y) + lin.y mod p over y in (Z/p)^dim."""
    counts = [0] * p
    for y in itertools.product(range(p), repeat=len(block)):
        val = _q(block, y) + sum(a * b for a, b in zip(lin, y))
        counts[mod_p(val, p)] += 1
    return tuple(counts)


def _convolve(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * p
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[(i + j) % p] += x * y
    return out


class _Density:
    """Truncated densities N_f = p^f P(F = 0 mod p^f) with a fixed homogeneous unimodular part."""

    def __init__(self, p: int, unimod_dist: Sequence[int], unimod_dim: int):
        self.p = p
        self.udist = list(unimod_dist)
        self.udim = unimod_dim
        self.memo: dict = {}

    def normalize(self, comps, c, f):
        out = []
        for block, lin in comps:
            if not any(lin):
                out.append((block, lin))
                continue
            fl = _linear_floor(block, lin, self.p)
            if fl is None:
                s = _solve(block, lin)
                c -= _q(block, s)
                out.append((block, (Fraction(0),) * len(block)))
            else:
                f = min(f, fl)
        return tuple(out), c, f

    def N(self, comps, c, f) -> Fraction:
        comps, c, f = self.normalize(comps, c, f)
        if f <= 0:
            return Fraction(1)
        key = (comps, c, f)
        if key in self.memo:
            return self.memo[key]
        val = self._compute(comps, c, f)
        self.memo[key] = val
        return val

    def _compute(self, comps, c, f) -> Fraction:
        p = self.p
        if vp(c, p) < 0:
            return Fraction(0)
        if not comps and self.udim == 0:
            if c == 0:
                if f == INF:
                    raise ValueError("density of the zero polynomial is infinite")
                return Fraction(p) ** f
            return Fraction(p) ** f if vp(c, p) >= f else Fraction(0)
        # homogeneous components: everything is homogeneous after normalize
        hdist = [0] * p
        hdist[0] = 1
        uni_h, sing_h = [], []
        for block, lin in comps:
            hdist = _convolve(hdist, _dist_mod_p(block, lin, p), p)
            (uni_h if _is_unimodular(block, p) else sing_h).append(block)
        hdim = sum(len(b) for b, _ in comps)
        r = self.udim + hdim
        total = _convolve(self.udist, hdist, p)
        cm = mod_p(c, p)
        n_zero = total[(-cm) % p]                     # F = 0 mod p, all y0
        if f == 1:
            return Fraction(p * n_zero, p ** r)
        # singular residues: zero on every unimodular coordinate
        sing_dim = sum(len(b) for b in sing_h)
        sing_rows = []
        for y in itertools.product(range(p), repeat=sing_dim):
            val = c
            pos = 0
            for block in sing_h:
                val += _q(block, y[pos:pos + len(block)])
                pos += len(block)
            sing_rows.append((y, val))
        n_sing = sum(1 for _, val in sing_rows if vp(val, p) >= 1)
        n_good = n_zero - n_sing
        acc = Fraction(p * n_good, p ** r)
        f2 = f - 2 if f != INF else INF
        for y, val in sing_rows:
            if vp(val, p) < 2:
                continue
            new = []
            pos = 0
            for block, lin in comps:
                if _is_unimodular(block, p):
                    new.append((block, lin))
                else:
                    yb = y[pos:pos + len(block)]
                    pos += len(block)
                    new.append((block, tuple(Fraction(x) / p for x in _apply(block, yb))))
            acc += Fraction(p * p, p ** r) * self.N(tuple(new), val / (p * p), f2)
        return acc


def _components(gram, blocks, gamma, p):
    """Jordan components (block, linear term) and the unimodular blocks of F(x) = Q(x+gamma)."""
    comps = []
    shift = Fraction(0)
    for idx in blocks:
        sub = tuple(tuple(gram[i][j] for j in idx) for i in idx)
        g = [gamma[i] for i in idx]
        lin_full = [sum(sub[a][b] * g[b] for b in range(len(idx))) for a in range(len(idx))]
        shift += sum(x * y for x, y in zip(lin_full, g)) / 2
        if not any(g):
            for block, cols in jordan(sub, p):
                comps.append((block, (Fraction(0),) * len(block)))
            continue
        for block, cols in jordan(sub, p):
            lin = tuple(sum(a * b for a, b in zip(col, lin_full)) for col in cols)
            comps.append((block, lin))
    return comps, shift


def local_density(gram: Sequence[Sequence[int]], gamma: Sequence, t, p: int,
                  blocks: Sequence[Sequence[int]] | None = None, depth: float = INF) -> Fraction:
    """delta_p for Q(x + gamma) = t where Q(x) = x^T gram x / 2.

    ``blocks`` may list mutually orthogonal index sets; identical blocks share the
    cached Jordan splitting. ``depth`` gives the truncated count at p^depth instead.
    """
    n = len(gram)
    if depth == INF and Fraction(t) == 0:
        raise ValueError("t = 0 needs a finite depth")
    if blocks is None:
        blocks = [tuple(range(n))]
    gamma = [Fraction(x) for x in gamma]
    comps, qg = _components(gram, blocks, gamma, p)
    c = qg - Fraction(t)
    uni, rest = [], []
    for block, lin in comps:
        (uni if _is_unimodular(block, p) and not any(lin) else rest).append((block, lin))
    # unimodular components with a linear term: complete the square now
    hom_uni = [b for b, _ in uni]
    others = []
    for block, lin in rest:
        if _is_unimodular(block, p):
            s = _solve(block, lin)
            c -= _q(block, s)
            hom_uni.append(block)
        else:
            others.append((block, lin))
    udist, udim = _homogeneous_dist_cached(tuple(hom_uni), p)
    eng = _Density(p, udist, udim)
    return eng.N(tuple(others), c, depth)


def _homogeneous_dist_cached(blocks: tuple, p: int):
    # identical blocks repeat many times (E8 summands); convolve by multiplicity
    from collections import Counter
    dist = [0] * p
    dist[0] = 1
    dim = 0
    for block, mult in Counter(blocks).items():
        d1 = _single_dist(block, p)
        for _ in range(mult):
            dist = _convolve(dist, d1, p)
        dim += mult * len(block)
    return dist, dim


@lru_cache(maxsize=None)
def _single_dist(block, p):
    return _dist_mod_p(block, (0,) * len(block), p)
