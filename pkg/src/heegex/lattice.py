"""Even lattices, discriminant forms, primitive representatives and glue data."""
from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, prod
from typing import Iterator, Sequence

from . import _linalg as la

LatticeVector = tuple[int, ...]
DualVector = tuple[Fraction, ...]


class LatticeError(ValueError):
    pass


class LatticeSyntaxError(LatticeError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"syntax error at position {position}: {msg}")
        self.position = position


class InvalidIndex(ValueError):
    pass


class RepresentativeNotFound(LookupError):
    """Search exhausted without finding a representative or proving emptiness."""


# ---------------------------------------------------------------- root lattices


def _cartan_a(n: int) -> la.Matrix:
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = -1
    return g


def _cartan_d(n: int) -> la.Matrix:
    g = _cartan_a(n - 1) + [[0] * (n - 1)]
    for row in g:
        row.append(0)
    g[n - 1][n - 1] = 2
    g[n - 1][n - 3] = g[n - 3][n - 1] = -1
    return g


def _cartan_e(n: int) -> la.Matrix:
    # chain of n-1 nodes with the extra node attached to the third one
    g = _cartan_a(n - 1) + [[0] * (n - 1)]
    for row in g:
        row.append(0)
    g[n - 1][n - 1] = 2
    g[n - 1][2] = g[2][n - 1] = -1
    return g


ROOT_LATTICES = {"U": [[0, 1], [1, 0]]}
ROOT_LATTICES.update({f"A{n}": _cartan_a(n) for n in range(1, 9)})
ROOT_LATTICES.update({f"D{n}": _cartan_d(n) for n in range(4, 9)})
ROOT_LATTICES.update({f"E{n}": _cartan_e(n) for n in (6, 7, 8)})


# ---------------------------------------------------------------- block helpers


def _blocks(gram: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Connected components of the Gram graph, each as a sorted index tuple."""
    n = len(gram)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        row = gram[i]
        for j in range(i + 1, n):
            if row[j]:
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    comps: dict[int, list[int]] = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return tuple(tuple(c) for c in sorted(comps.values()))


def _sub(gram, idx) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(gram[i][j] for j in idx) for i in idx)


@lru_cache(maxsize=None)
def _block_inertia(g: tuple) -> tuple[int, int, int]:
    return la.inertia(g)


@lru_cache(maxsize=None)
def _block_det(g: tuple) -> int:
    return la.det(g)


@dataclass(frozen=True)
class _BlockSNF:
    divisors: tuple[int, ...]       # nontrivial elementary divisors
    p_rows: tuple[tuple[int, ...], ...]   # matching rows of P
    gens: tuple[DualVector, ...]    # block-local generator lifts


@lru_cache(maxsize=None)
def _block_snf(g: tuple) -> _BlockSNF:
    d, p, _ = la.smith(g)
    n = len(g)
    ginv = la.inverse(g)
    pinv = la.inverse(p)
    divs, rows, gens = [], [], []
    for i in range(n):
        if d[i][i] > 1:
            divs.append(d[i][i])
            rows.append(tuple(p[i]))
            col = [pinv[r][i] for r in range(n)]
            gens.append(tuple(Fraction(x) for x in la.matvec(ginv, col)))
    return _BlockSNF(tuple(divs), tuple(rows), tuple(gens))


# ---------------------------------------------------------------- lattices


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[int, ...], ...]
    hyperbolic_split_hint: tuple[int, int] | None = None
    expr: str | None = field(default=None, compare=False)

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square and non-empty")
        for i in range(n):
            if g[i][i] % 2:
                raise LatticeError(f"odd diagonal entry {g[i][i]} at {i}: lattice is not even")
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise LatticeError("Gram matrix is not symmetric")
        if self.det == 0:
            raise LatticeError("Gram matrix is degenerate (zero determinant)")
        if self.hyperbolic_split_hint is not None:
            i, j = self.hyperbolic_split_hint
            if (g[i][i], g[i][j], g[j][j]) != (0, 1, 0) or any(
                    g[i][k] or g[j][k] for k in range(n) if k not in (i, j)):
                raise LatticeError("hyperbolic split hint does not mark an orthogonal U summand")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return _blocks(self.gram)

    def block_gram(self, block: Sequence[int]) -> tuple:
        return _sub(self.gram, block)

    @cached_property
    def det(self) -> int:
        return prod(_block_det(self.block_gram(b)) for b in self.blocks)

    @cached_property
    def signature(self) -> tuple[int, int]:
        pos = neg = 0
        for b in self.blocks:
            p, q, _ = _block_inertia(self.block_gram(b))
            pos += p
            neg += q
        return pos, neg

    @cached_property
    def digest(self) -> str:
        text = ";".join(",".join(map(str, row)) for row in self.gram)
        return hashlib.sha256(text.encode()).hexdigest()

    @cached_property
    def discriminant_group(self) -> "DiscriminantGroup":
        return DiscriminantGroup(self)

    def pair(self, u: Sequence, v: Sequence):
        g = self.gram
        total = 0
        for i, ui in enumerate(u):
            if ui:
                row = g[i]
                total += ui * sum(row[j] * vj for j, vj in enumerate(v) if vj)
        return total

    def q(self, v: Sequence):
        return Fraction(self.pair(v, v)) / 2

    def gram_times(self, v: Sequence) -> list:
        return [sum(x * y for x, y in zip(row, v) if y) for row in self.gram]

    def is_negative_definite(self) -> bool:
        return self.signature == (0, self.rank)

    def __str__(self):
        return self.expr or f"Lattice(rank={self.rank}, det={self.det})"


def direct_sum(*parts: Lattice, expr: str | None = None) -> Lattice:
    n = sum(p.rank for p in parts)
    g = [[0] * n for _ in range(n)]
    hint = None
    off = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                g[off + i][off + j] = p.gram[i][j]
        if hint is None and p.hyperbolic_split_hint is not None:
            hint = (off + p.hyperbolic_split_hint[0], off + p.hyperbolic_split_hint[1])
        off += p.rank
    return Lattice(tuple(map(tuple, g)), hint, expr)


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:([A-Z][0-9]*)|(-?[0-9]+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or m.group(0).strip() == "":
            break
        if m.group(1):
            out.append(("name", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(("int", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+*()[];,":
                raise LatticeSyntaxError(f"unexpected character {ch!r}", m.start(3))
            out.append(("sym", ch, m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = repr(value) if value else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise LatticeSyntaxError(f"expected {want}, got token {got}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> list:
        parts = self.term()
        while self.peek()[:2] == ("sym", "+"):
            self.take("sym", "+")
            parts += self.term()
        self.take("end")
        return parts

    def term(self) -> list:
        atom = self.atom()
        if self.peek()[:2] == ("sym", "*"):
            self.take("sym", "*")
            tok = self.take("int")
            count = int(tok[1])
            if count < 1:
                raise LatticeSyntaxError("repetition count must be positive", tok[2])
            return [atom] * count
        return [atom]

    def atom(self) -> tuple:
        tok = self.peek()
        if tok[:2] == ("sym", "["):
            return self.raw()
        if tok[0] != "name":
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise LatticeSyntaxError(f"unexpected token {got}", tok[2])
        self.take("name")
        if tok[1] not in ROOT_LATTICES:
            raise LatticeSyntaxError(f"unknown lattice name {tok[1]!r}", tok[2])
        scale = 1
        if self.peek()[:2] == ("sym", "("):
            self.take("sym", "(")
            st = self.take("int")
            scale = int(st[1])
            if scale == 0:
                raise LatticeSyntaxError("scale must be nonzero", st[2])
            self.take("sym", ")")
        g = [[scale * x for x in row] for row in ROOT_LATTICES[tok[1]]]
        return tok[1], scale, g

    def raw(self) -> tuple:
        start = self.take("sym", "[")[2]
        rows = [self.row()]
        while self.peek()[:2] == ("sym", ";"):
            self.take("sym", ";")
            rows.append(self.row())
        self.take("sym", "]")
        if any(len(r) != len(rows) for r in rows):
            raise LatticeSyntaxError("raw Gram matrix is not square", start)
        return "raw", 1, rows

    def row(self) -> list[int]:
        vals = [int(self.take("int")[1])]
        while self.peek()[:2] == ("sym", ","):
            self.take("sym", ",")
            vals.append(int(self.take("int")[1]))
        return vals


def parse_lattice(text: str) -> Lattice:
    """Parse a lattice expression such as ``U*2+E8(-1)*2+A1(-3)``."""
    atoms = _Parser(text).expr()
    parts = []
    for name, scale, g in atoms:
        hint = (0, 1) if name == "U" and scale == 1 else None
        parts.append(Lattice(tuple(map(tuple, g)), hint))
    return direct_sum(*parts, expr=text.strip())


# ---------------------------------------------------------------- discriminant group


class DiscriminantGroup:
    """D(L) = L^vee / L in Smith coordinates, assembled block by block."""

    def __init__(self, lattice: Lattice):
        self.lattice = lattice
        divs, pieces = [], []
        for b in lattice.blocks:
            snf = _block_snf(lattice.block_gram(b))
            if snf.divisors:
                pieces.append((b, snf, len(divs)))
                divs.extend(snf.divisors)
        self.elementary_divisors: tuple[int, ...] = tuple(divs)
        self._pieces = pieces

    @property
    def order(self) -> int:
        return prod(self.elementary_divisors)

    @property
    def exponent(self) -> int:
        e = 1
        for d in self.elementary_divisors:
            e = e * d // gcd(e, d)
        return e

    def __len__(self):
        return self.order

    @cached_property
    def generators(self) -> tuple[DualVector, ...]:
        return tuple(self.lift_residues(tuple(int(i == j) for j in range(len(self.elementary_divisors))))
                     for i in range(len(self.elementary_divisors)))

    def residues_of(self, y: Sequence) -> tuple[int, ...]:
        """SNF residues of a dual vector given in lattice coordinates."""
        out = []
        g = self.lattice.gram
        for block, snf, _ in self._pieces:
            w = []
            for i in block:
                s = sum(g[i][j] * y[j] for j in block if y[j])
                if isinstance(s, Fraction):
                    if s.denominator != 1:
                        raise ValueError("vector is not in the dual lattice")
                    s = s.numerator
                w.append(int(s))
            for d, prow in zip(snf.divisors, snf.p_rows):
                out.append(sum(a * b for a, b in zip(prow, w)) % d)
        return tuple(out)

    def lift_residues(self, res: Sequence[int]) -> DualVector:
        y = [Fraction(0)] * self.lattice.rank
        for block, snf, off in self._pieces:
            for k, gen in enumerate(snf.gens):
                r = res[off + k]
                if r:
                    for i, x in zip(block, gen):
                        y[i] += r * x
        return tuple(y)

    def element(self, res: Sequence[int] = ()) -> "DiscriminantElement":
        if not res:
            res = (0,) * len(self.elementary_divisors)
        if len(res) != len(self.elementary_divisors):
            raise ValueError(f"expected {len(self.elementary_divisors)} residues, got {len(res)}")
        return DiscriminantElement(tuple(int(r) % d for r, d in zip(res, self.elementary_divisors)), self)

    def element_of(self, y: Sequence) -> "DiscriminantElement":
        return DiscriminantElement(self.residues_of(y), self)

    @property
    def zero(self) -> "DiscriminantElement":
        return self.element()

    def __iter__(self) -> Iterator["DiscriminantElement"]:
        for res in itertools.product(*(range(d) for d in self.elementary_divisors)):
            yield DiscriminantElement(res, self)

    def __repr__(self):
        return f"DiscriminantGroup({list(self.elementary_divisors)})"


@dataclass(frozen=True, eq=False)
class DiscriminantElement:
    residues: tuple[int, ...]
    parent: DiscriminantGroup

    def _key(self):
        return self.parent.lattice.digest, self.residues

    def __eq__(self, other):
        return isinstance(other, DiscriminantElement) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _check(self, other: "DiscriminantElement"):
        if other.parent is not self.parent and other.parent.lattice.gram != self.parent.lattice.gram:
            raise ValueError("elements belong to different discriminant groups")

    def __add__(self, other):
        self._check(other)
        return self.parent.element(tuple(a + b for a, b in zip(self.residues, other.residues)))

    def __neg__(self):
        return self.parent.element(tuple(-a for a in self.residues))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k: int):
        return self.parent.element(tuple(k * a for a in self.residues))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.residues)

    @property
    def order(self) -> int:
        o = 1
        for r, d in zip(self.residues, self.parent.elementary_divisors):
            k = d // gcd(r, d)
            o = o * k // gcd(o, k)
        return o

    def lift(self) -> DualVector:
        return self.parent.lift_residues(self.residues)

    def q_exact(self) -> Fraction:
        """q on the canonical lift, not reduced."""
        return self.parent.lattice.q(self.lift())

    @property
    def q(self) -> Fraction:
        return self.q_exact() % 2

    def b(self, other: "DiscriminantElement") -> Fraction:
        self._check(other)
        return Fraction(self.parent.lattice.pair(self.lift(), other.lift())) % 1

    def __repr__(self):
        return f"<{','.join(map(str, self.residues))}>"


def disc_q(g: DiscriminantElement) -> Fraction:
    return g.q


def disc_b(g: DiscriminantElement, h: DiscriminantElement) -> Fraction:
    return g.b(h)


def discriminant_group(lattice: Lattice) -> DiscriminantGroup:
    return lattice.discriminant_group


@dataclass(frozen=True)
class HeegnerIndex:
    m: Fraction
    mu: DiscriminantElement

    def __post_init__(self):
        m = Fraction(self.m)
        object.__setattr__(self, "m", m)
        if m <= 0:
            raise InvalidIndex(f"m = {m} must be positive")
        if (m + self.mu.q_exact()).denominator != 1:
            raise InvalidIndex(f"m + q(mu) = {m + self.mu.q} is not an integer")

    @property
    def d_mu(self) -> int:
        return self.mu.order

    @property
    def lattice(self) -> Lattice:
        return self.mu.parent.lattice


# ---------------------------------------------------------------- vectors


def divisibility(lattice: Lattice, v: Sequence[int]) -> int:
    if not any(v):
        raise ValueError("divisibility of the zero vector")
    return la.gcd_list(lattice.gram_times(v))


def is_primitive(v: Sequence[int]) -> bool:
    return la.gcd_list(v) == 1


@dataclass(frozen=True)
class EmptyDivisor:
    witness: str


# box search radius for lattices without a marked U summand
SEARCH_BUDGET = 2_000_000


def primitive_representative(lattice: Lattice, idx: HeegnerIndex,
                             use_hint: bool = True) -> LatticeVector | EmptyDivisor:
    """Primitive rho with div(rho) = d_mu, rho/d_mu in the class mu and q(rho) = -m d_mu^2.

    With a marked U summand this is a closed formula. Otherwise a box search runs in the
    coset; if it fails, emptiness is certified only by a local obstruction.
    """
    pos, neg = lattice.signature
    if pos != 2:
        raise LatticeError(f"signature {lattice.signature} is not of the form (2, n)")
    mu, m, d = idx.mu, idx.m, idx.d_mu
    lam = list(mu.lift())
    if use_hint and lattice.hyperbolic_split_hint is not None:
        e, f = lattice.hyperbolic_split_hint
        lam[e] = lam[f] = Fraction(0)
        a0 = -m - lattice.q(lam)
        assert a0.denominator == 1
        lam[e] += a0
        lam[f] += 1
        rho = tuple(int(d * x) for x in lam)
        return rho
    from .padic import local_density
    for p in _obstruction_primes(lattice, m):
        if local_density(lattice.gram, lam, -m, p) == 0:
            return EmptyDivisor(f"no solution of q(x) = {-m} in mu + L over Z_{p}")
    found = _search_representative(lattice, idx, lam)
    if found is not None:
        return found
    raise RepresentativeNotFound(f"no representative of (m={m}, mu={mu}) within the search box")


def _obstruction_primes(lattice: Lattice, m: Fraction) -> list[int]:
    from sympy import primefactors
    n = 2 * abs(lattice.det) * m.numerator * m.denominator
    return primefactors(n)


def _search_representative(lattice: Lattice, idx: HeegnerIndex, lam) -> LatticeVector | None:
    import numpy as np
    n = lattice.rank
    d = idx.d_mu
    radius = 1
    while (2 * radius + 3) ** n <= SEARCH_BUDGET:
        radius += 1
    base = [x - (x.numerator // x.denominator) for x in lam]
    den = 1
    for x in base:
        den = den * x.denominator // gcd(den, x.denominator)
    # integer coordinates X = den * x; q(x) = -m  <=>  X^T G X = -2 m den^2
    target = -2 * idx.m * den * den
    if target.denominator != 1:
        return None
    target = int(target)
    g = np.array(lattice.gram, dtype=np.int64)
    shift = np.array([int(b * den) for b in base], dtype=np.int64)
    side = 2 * radius + 1
    total = side ** n
    chunk = 1 << 16
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total), dtype=np.int64)
        y = np.stack(np.unravel_index(flat, (side,) * n), axis=1) - radius
        X = y * den + shift
        vals = np.einsum("ij,jk,ik->i", X, g, X)
        for i in np.nonzero(vals == target)[0]:
            rho = tuple(int(c) * d // den for c in X[i])
            if is_primitive(rho) and divisibility(lattice, rho) == d:
                return rho
    return None


# ---------------------------------------------------------------- complements and glue


@dataclass(frozen=True)
class Complement:
    """L = rho^perp with basis columns given by ``embedding`` (rank(Lambda) x rank(L))."""
    lattice: Lattice
    embedding: tuple[tuple[int, ...], ...]
    support: tuple[int, ...]          # coordinates of Lambda mixed with rho
    inverse_rows: tuple[tuple[int, ...], ...]   # rows of [x|K]^-1 on the support
    alpha0: LatticeVector             # <alpha0, rho> = div(rho)


def orthogonal_complement(lattice: Lattice, rho: Sequence[int]) -> Complement:
    if not is_primitive(rho):
        raise ValueError("rho is not primitive")
    touched = {i for i, x in enumerate(rho) if x}
    support = sorted(i for b in lattice.blocks if touched & set(b) for i in b)
    rest = [i for i in range(lattice.rank) if i not in set(support)]
    g = lattice.gram
    w = [sum(g[i][j] * rho[j] for j in support) for i in support]
    x, kern = la.row_kernel_basis(w)
    kern = la.size_reduce(kern) if kern and kern[0] else kern
    nk = len(kern[0]) if kern else 0
    v = [[x[i]] + list(kern[i]) for i in range(len(support))]
    vinv = [[int(c) for c in row] for row in la.inverse(v)]
    n = lattice.rank
    cols = []
    for c in range(nk):
        col = [0] * n
        for i, s in enumerate(support):
            col[s] = kern[i][c]
        cols.append(col)
    for r in rest:
        col = [0] * n
        col[r] = 1
        cols.append(col)
    emb = la.transpose(cols)
    # Gram of L: kernel part explicitly, the untouched part copied
    sub = [[g[i][j] for j in support] for i in support]
    gk = la.matmul(la.transpose(kern), la.matmul(sub, kern)) if nk else []
    rank_l = nk + len(rest)
    gl = [[0] * rank_l for _ in range(rank_l)]
    for i in range(nk):
        for j in range(nk):
            gl[i][j] = gk[i][j]
    for a, r in enumerate(rest):
        for b, s in enumerate(rest):
            gl[nk + a][nk + b] = g[r][s]
    hint = None
    if lattice.hyperbolic_split_hint is not None:
        e, f = lattice.hyperbolic_split_hint
        if e in rest and f in rest:
            hint = (nk + rest.index(e), nk + rest.index(f))
    alpha0 = [0] * n
    for i, s in enumerate(support):
        alpha0[s] = x[i]
    L = Lattice(tuple(map(tuple, gl)), hint)
    return Complement(L, tuple(map(tuple, emb)), tuple(support),
                      tuple(map(tuple, vinv)), tuple(alpha0))


@dataclass(frozen=True)
class GlueRep:
    j: int
    alpha: LatticeVector
    alpha_L: DiscriminantElement
    r_K: Fraction                    # alpha_K = r_K * rho, reduced mod 1


@dataclass(frozen=True)
class GlueData:
    ambient: Lattice
    rho: LatticeVector
    complement: Complement
    N: Fraction                      # q(rho) = -N
    d_mu: int
    kappa: int
    coset_reps: tuple[GlueRep, ...]

    @property
    def L(self) -> Lattice:
        return self.complement.lattice

    @cached_property
    def K(self) -> Lattice:
        return Lattice(((int(-2 * self.N),),))

    def split(self, x: Sequence) -> tuple[DiscriminantElement, Fraction]:
        """Project a vector of Lambda-dual onto L-dual and K-dual.

        Returns the class of x_L in D(L) and r with x_K = r * rho (r mod 1).
        """
        lam = self.ambient
        comp = self.complement
        r = Fraction(lam.pair(x, self.rho)) / (-2 * self.N)
        xl = [Fraction(a) - r * b for a, b in zip(x, self.rho)]
        sup = comp.support
        xs = [xl[i] for i in sup]
        y = [sum(a * b for a, b in zip(row, xs) if b) for row in comp.inverse_rows[1:]]
        supset = set(sup)
        y += [xl[i] for i in range(lam.rank) if i not in supset]
        return self.L.discriminant_group.element_of(y), r % 1


def glue_cosets(lattice: Lattice, rho: Sequence[int], idx: HeegnerIndex) -> GlueData:
    rho = tuple(int(c) for c in rho)
    comp = orthogonal_complement(lattice, rho)
    d = divisibility(lattice, rho)
    if d != idx.d_mu:
        raise ValueError(f"div(rho) = {d} differs from the order {idx.d_mu} of mu")
    alpha = comp.alpha0
    if lattice.pair(alpha, rho) != d:
        raise AssertionError("no alpha with <alpha, rho> = div(rho)")
    N = -lattice.q(rho)
    kappa = 2 * idx.m * d
    assert kappa.denominator == 1 and kappa == 2 * N / d
    kappa = int(kappa)
    glue = GlueData(lattice, rho, comp, N, d, kappa, ())
    reps = []
    for j in range(kappa):
        a = tuple(j * c for c in alpha)
        el, r = glue.split(a)
        reps.append(GlueRep(j, a, el, r))
    object.__setattr__(glue, "coset_reps", tuple(reps))
    return glue


# ---------------------------------------------------------------- named families


def k3_lattice(d: int) -> Lattice:
    """Lambda_2d = U^2 + E8(-1)^2 + <-2d>."""
    return parse_lattice(f"U*2+E8(-1)*2+A1({-d})")


def k3_class(lattice: Lattice, a: int) -> DiscriminantElement:
    """The class a * l/(2d) where l spans the last summand."""
    n = lattice.rank
    two_d = -lattice.gram[n - 1][n - 1]
    y = [Fraction(0)] * (n - 1) + [Fraction(a, two_d)]
    return lattice.discriminant_group.element_of(y)


def unimodular_lattice(r: int) -> Lattice:
    return parse_lattice(f"U*2+E8(-1)*{r}")
