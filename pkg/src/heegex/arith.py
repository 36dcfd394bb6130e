"""Exact number theory helpers and rigorous rational interval arithmetic."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt

from sympy import bernoulli as _sym_bernoulli
from sympy import factorint as _factorint
from sympy import mobius as _mobius
from sympy.functions.combinatorial.numbers import kronecker_symbol


def factorint(n: int) -> dict[int, int]:
    return {int(p): int(e) for p, e in _factorint(abs(int(n))).items()}


def primes_dividing(n: int) -> list[int]:
    return sorted(factorint(n)) if n else []


def moebius(n: int) -> int:
    return int(_mobius(n))


def kronecker(d: int, n: int) -> int:
    return int(kronecker_symbol(int(d), int(n)))


def ord_p(n, p: int) -> int:
    n = Fraction(n)
    if n == 0:
        raise ValueError("ord of zero")
    v, a, b = 0, n.numerator, n.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def sigma(s: int, n: int) -> Fraction:
    """Divisor sum sum_{d | n} d^s for an integer exponent s."""
    total = Fraction(1)
    for p, e in factorint(n).items():
        total *= sum(Fraction(p) ** (s * j) for j in range(e + 1))
    return total


def rational_sqrt(x: Fraction) -> Fraction:
    """Exact square root of a non-negative rational square; raises otherwise."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative")
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a != x.numerator or b * b != x.denominator:
        raise ValueError(f"{x} is not a rational square")
    return Fraction(a, b)


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = sf * square."""
    sf = -1 if n < 0 else 1
    for p, e in factorint(n).items():
        if e % 2:
            sf *= p
    return sf


def fundamental_discriminant(x: Fraction) -> int:
    """Discriminant of Q(sqrt(x)) for a nonzero rational x (1 for squares)."""
    x = Fraction(x)
    sf = squarefree_part(x.numerator * x.denominator)
    return sf if sf % 4 == 1 else 4 * sf


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    b = _sym_bernoulli(n)
    val = Fraction(int(b.p), int(b.q))
    # sympy >= 1.12 uses B_1 = +1/2; pin the classical B_1 = -1/2
    return Fraction(-1, 2) if n == 1 else val


@lru_cache(maxsize=None)
def _bernoulli_poly(n: int) -> tuple[Fraction, ...]:
    """Coefficients of B_n(x) = sum_j binom(n, j) B_j x^{n-j}, lowest degree first."""
    coeffs = [Fraction(0)] * (n + 1)
    binom = 1
    for j in range(n + 1):
        coeffs[n - j] = binom * bernoulli_number(j)
        binom = binom * (n - j) // (j + 1)
    return tuple(coeffs)


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(_bernoulli_poly(n)):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def generalized_bernoulli(k: int, d0: int) -> Fraction:
    """B_{k, chi} for the Kronecker character chi = (d0/.) of a fundamental discriminant."""
    f = abs(d0)
    if f == 1:
        return bernoulli_number(k) if k != 1 else Fraction(1, 2)
    acc = Fraction(0)
    for a in range(1, f + 1):
        c = kronecker(d0, a)
        if c:
            acc += c * bernoulli_poly(k, Fraction(a, f))
    return Fraction(f) ** (k - 1) * acc


def l_value_ratio(k: int, d0: int) -> Fraction:
    """L(k, chi_d0) / (2 pi)^k * sqrt(f)^{-1}, exact; needs chi(-1) = (-1)^k.

    L(k, chi) = |B_{k,chi}| sqrt(f) (2 pi)^k / (2 k! f^k).
    """
    f = abs(d0)
    return abs(generalized_bernoulli(k, d0)) / (2 * factorial(k) * Fraction(f) ** k)


# ---------------------------------------------------------------- intervals


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with exact rational endpoints."""
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @staticmethod
    def point(x) -> "Interval":
        return Interval(x, x)

    @staticmethod
    def _lift(x) -> "Interval":
        return x if isinstance(x, Interval) else Interval.point(x)

    def __add__(self, other):
        o = Interval._lift(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-Interval._lift(other))

    def __rsub__(self, other):
        return Interval._lift(other) - self

    def __mul__(self, other):
        o = Interval._lift(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(prods), max(prods))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * Interval._lift(other).reciprocal()

    def __rtruediv__(self, other):
        return Interval._lift(other) * self.reciprocal()

    def __pow__(self, n: int):
        if n < 0:
            return (self ** -n).reciprocal()
        if self.lo >= 0:
            return Interval(self.lo ** n, self.hi ** n)
        out = Interval.point(1)
        for _ in range(n):
            out = out * self
        return out

    def sqrt(self, bits: int = 96) -> "Interval":
        if self.lo < 0:
            raise ValueError("sqrt of negative interval")
        return Interval(_sqrt_floor(self.lo, bits), _sqrt_ceil(self.hi, bits))

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _sqrt_floor(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(isqrt(x.numerator * scale * scale // x.denominator), scale)


def _sqrt_ceil(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    n = x.numerator * scale * scale
    q = -(-n // x.denominator)
    r = isqrt(q)
    if r * r < q:
        r += 1
    return Fraction(r, scale)


def _arctan_inv(n: int, terms: int) -> Interval:
    """arctan(1/n) bracketed by consecutive partial sums of the alternating series."""
    s = Fraction(0)
    prev = None
    for j in range(terms + 1):
        prev = s
        s += Fraction((-1) ** j, (2 * j + 1) * n ** (2 * j + 1))
    return Interval(min(s, prev), max(s, prev))


@lru_cache(maxsize=None)
def pi_interval(terms: int = 30) -> Interval:
    return 16 * _arctan_inv(5, terms) - 4 * _arctan_inv(239, terms)


@lru_cache(maxsize=None)
def zeta_interval(s: int, n_terms: int = 50) -> Interval:
    """zeta(s) for integer s >= 2: partial sum plus integral bounds for the tail."""
    if s < 2:
        raise ValueError("zeta pole or outside the convergent range")
    partial = sum(Fraction(1, n ** s) for n in range(1, n_terms + 1))
    lo = partial + Fraction(1, (s - 1) * (n_terms + 1) ** (s - 1))
    hi = partial + Fraction(1, (s - 1) * n_terms ** (s - 1))
    return Interval(lo, hi)


def gamma_interval(k: Fraction) -> Interval:
    """Gamma(k) for k in (1/2)Z_{>0}: exact for integers, times sqrt(pi) otherwise."""
    k = Fraction(k)
    if k.denominator == 1:
        return Interval.point(factorial(int(k) - 1))
    if k.denominator != 2 or k <= 0:
        raise ValueError("only positive half-integers")
    s = int(k - Fraction(1, 2))
    exact = Fraction(factorial(2 * s), 4 ** s * factorial(s))
    return exact * pi_interval().sqrt()


def pow_interval(x: Fraction, e: Fraction) -> Interval:
    """x^e for rational x > 0 and e in (1/2)Z."""
    e = Fraction(e)
    if e.denominator == 1:
        return Interval.point(Fraction(x) ** int(e))
    if e.denominator != 2:
        raise ValueError("only half-integral exponents")
    return Interval.point(Fraction(x) ** int(e.numerator)).sqrt()
