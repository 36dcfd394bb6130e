from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from heegex.arith import (Interval, bernoulli_number, fundamental_discriminant, gamma_interval,
                          generalized_bernoulli, kronecker, moebius, pi_interval, pow_interval,
                          rational_sqrt, sigma, squarefree_part, zeta_interval)

mpmath.mp.dps = 40


def test_pi_and_zeta_enclose_mpmath():
    assert mpmath.pi in _mp(pi_interval())
    for s in range(2, 12):
        assert mpmath.zeta(s) in _mp(zeta_interval(s))


def _mp(iv):
    return mpmath.mpi(mpmath.mpf(iv.lo.numerator) / iv.lo.denominator,
                      mpmath.mpf(iv.hi.numerator) / iv.hi.denominator)


@pytest.mark.parametrize("k", [Fraction(n, 2) for n in range(1, 30)])
def test_gamma_interval(k):
    assert mpmath.gamma(mpmath.mpf(k.numerator) / k.denominator) in _mp(gamma_interval(k))


@given(st.fractions(min_value=Fraction(1, 100), max_value=1000), st.integers(-6, 6))
def test_pow_interval_half_exponents(x, n):
    iv = pow_interval(x, Fraction(n, 2))
    # exact check: the square of the enclosure brackets x^n
    assert iv.lo ** 2 <= x ** n <= iv.hi ** 2
    assert iv.width < Fraction(1, 2 ** 40) * max(1, iv.hi)


@given(st.fractions(-50, 50), st.fractions(-50, 50), st.fractions(-50, 50), st.fractions(-50, 50))
def test_interval_arithmetic_encloses(a, b, c, d):
    x, y = Interval(min(a, b), max(a, b)), Interval(min(c, d), max(c, d))
    for u in (a, b):
        for v in (c, d):
            assert u + v in x + y
            assert u - v in x - y
            assert u * v in x * y
            if not (y.lo <= 0 <= y.hi):
                assert u / v in x / y


def test_bernoulli():
    assert [bernoulli_number(n) for n in (0, 2, 4, 6, 12)] == [1, Fraction(1, 6), Fraction(-1, 30),
                                                               Fraction(1, 42), Fraction(-691, 2730)]
    assert generalized_bernoulli(1, -4) == Fraction(-1, 2)
    assert generalized_bernoulli(1, -3) == Fraction(-1, 3)
    assert generalized_bernoulli(2, 5) == Fraction(4, 5)


def test_l_value_from_generalized_bernoulli():
    # L(3, chi_{-4}) = pi^3 / 32
    b = abs(generalized_bernoulli(3, -4))
    val = mpmath.mpf(b.numerator) / b.denominator * 2 * (2 * mpmath.pi) ** 3 / (2 * 6 * 4 ** 3)
    assert mpmath.almosteq(val, mpmath.pi ** 3 / 32, 1e-30)


def test_kronecker_and_moebius():
    assert [kronecker(-4, n) for n in range(1, 8)] == [1, 0, -1, 0, 1, 0, -1]
    assert kronecker(8, 3) == -1 and kronecker(5, 2) == -1
    assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


@given(st.integers(1, 5000))
def test_sigma_matches_divisors(n):
    assert sigma(3, n) == sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


@given(st.integers(-10 ** 6, 10 ** 6).filter(bool))
def test_squarefree_and_fundamental(n):
    s = squarefree_part(n)
    assert rational_sqrt(Fraction(n, s)) ** 2 == Fraction(n, s)
    d0 = fundamental_discriminant(Fraction(n))
    assert d0 % 4 in (0, 1)
    assert rational_sqrt(Fraction(n, d0)).denominator >= 1


def test_rational_sqrt_rejects_nonsquares():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(ValueError):
        rational_sqrt(Fraction(2))
