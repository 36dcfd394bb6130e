import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heegex.lattice import parse_lattice
from heegex.theta import theta_negdef, theta_rank1


def test_rank1_examples():
    assert theta_rank1(1, 0, 1) == 2
    assert theta_rank1(1, 0, Fraction(1, 2)) == 0
    assert theta_rank1(4, Fraction(1, 8), Fraction(1, 16)) == 1
    assert theta_rank1(3, 0, 0) == 1 and theta_rank1(3, Fraction(1, 2), 0) == 0
    with pytest.raises(ValueError):
        theta_rank1(0, 0, 1)


@given(st.fractions(min_value=Fraction(1, 12), max_value=12, max_denominator=12),
       st.fractions(min_value=0, max_value=1, max_denominator=12),
       st.fractions(min_value=0, max_value=40, max_denominator=48))
def test_rank1_matches_enumeration(N, r, s):
    brute = sum(1 for c in range(-60, 61) if N * (c + r) ** 2 == s)
    assert theta_rank1(N, r, s) == brute


def test_negdef_examples():
    K = parse_lattice("A1(-1)*2")
    assert theta_negdef(K, None, 0) == 1
    assert theta_negdef(K, None, 1) == 4
    assert theta_negdef(parse_lattice("E8(-1)"), None, 1) == 240
    assert theta_negdef(parse_lattice("E8(-1)"), None, 2) == 2160
    assert theta_negdef(parse_lattice("D4(-1)"), None, 1) == 24
    with pytest.raises(ValueError):
        theta_negdef(parse_lattice("U"), None, 1)


ATOMS = ["A1(-1)", "A1(-3)", "A2(-1)", "A1(-1)*2", "A3(-1)", "A1(-2)+A2(-1)"]


@given(st.sampled_from(ATOMS), st.data())
def test_negdef_matches_box_enumeration(expr, data):
    K = parse_lattice(expr)
    D = K.discriminant_group
    nu = D.element(tuple(data.draw(st.integers(0, d - 1)) for d in D.elementary_divisors))
    s = -nu.q_exact() % 1 + data.draw(st.integers(0, 3))
    shift = nu.lift()
    count = 0
    for x in itertools.product(range(-5, 6), repeat=K.rank):
        v = [a + b for a, b in zip(x, shift)]
        count += -K.q(v) == s
    assert theta_negdef(K, nu, s) == count


@given(st.sampled_from(ATOMS), st.data())
def test_negdef_symmetric_in_nu(expr, data):
    K = parse_lattice(expr)
    D = K.discriminant_group
    nu = D.element(tuple(data.draw(st.integers(0, d - 1)) for d in D.elementary_divisors))
    s = -nu.q_exact() % 1 + data.draw(st.integers(0, 4))
    assert theta_negdef(K, nu, s) == theta_negdef(K, -nu, s)
