"""Exact integer and rational matrix routines on nested lists."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def det(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def solve_columns(basis: Sequence[Sequence[int]], v: Sequence) -> list[Fraction]:
    """Coordinates y with basis-columns · y = v; raises if v is outside the span."""
    rows = len(basis)
    cols = len(basis[0]) if rows else 0
    m = [[Fraction(basis[i][j]) for j in range(cols)] + [Fraction(v[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][cols] != 0 for i in range(r, rows)):
        raise ValueError("vector not in the column span")
    y = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        y[c] = m[i][cols]
    return y


def inertia(a: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts via exact symmetric reduction."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j, which has non-zero norm 2*m[i][j]
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = m[i][piv] / d
            if f:
                for k in active:
                    m[i][k] -= f * m[piv][k]
        for i in active:
            m[i][piv] = m[piv][i] = Fraction(0)
    return pos, neg, n - pos - neg


def smith(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form D = P·A·Q with P, Q unimodular; diagonal entries are non-negative."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(map(int, row)) for row in a]
    p = identity(rows)
    q = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        p[dst] = [x + f * y for x, y in zip(p[dst], p[src])]

    def add_col(src, dst, f):
        for row in d:
            row[dst] += f * row[src]
        for row in q:
            row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(d[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j]]
            if not entries:
                return d, p, q
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // d[t][t]))
                    if d[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // d[t][t]))
                    if d[t][j]:
                        done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            p[t] = [-x for x in p[t]]
    return d, p, q


def row_kernel_basis(w: Sequence[int]) -> tuple[list[int], Matrix]:
    """For a non-zero integer row w, return (x, K): w·x = gcd(w) and the columns of K span {y : w·y = 0}.

    The matrix [x | K] is unimodular.
    """
    n = len(w)
    cols = identity(n)  # cols[i] is the i-th column vector
    vals = list(map(int, w))
    # repeatedly combine columns until a single non-zero value remains
    while True:
        nz = [i for i in range(n) if vals[i]]
        if len(nz) <= 1:
            break
        i = min(nz, key=lambda k: abs(vals[k]))
        for j in nz:
            if j != i:
                f = vals[j] // vals[i]
                vals[j] -= f * vals[i]
                cols[j] = [a - f * b for a, b in zip(cols[j], cols[i])]
    piv = next(i for i in range(n) if vals[i])
    x = cols[piv]
    if vals[piv] < 0:
        x = [-a for a in x]
    kernel = [cols[i] for i in range(n) if i != piv]
    return x, transpose(kernel) if kernel else [[] for _ in range(n)]


def size_reduce(basis: Matrix) -> Matrix:
    """Pairwise size reduction of the columns of an integer basis (keeps the span)."""
    cols = transpose(basis)
    changed = True
    while changed:
        changed = False
        for i in range(len(cols)):
            for j in range(len(cols)):
                if i == j:
                    continue
                nj = sum(x * x for x in cols[j])
                if not nj:
                    continue
                f = round(Fraction(dot(cols[i], cols[j]), nj))
                if f:
                    cand = [a - f * b for a, b in zip(cols[i], cols[j])]
                    if sum(x * x for x in cand) < sum(x * x for x in cols[i]):
                        cols[i] = cand
                        changed = True
    return transpose(cols)


def gcd_list(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
