from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heegex.lattice import (EmptyDivisor, HeegnerIndex, InvalidIndex, LatticeError, LatticeSyntaxError,
                            divisibility, glue_cosets, is_primitive, k3_class, k3_lattice, parse_lattice,
                            primitive_representative, unimodular_lattice)

from strategies import heegner_indices, signature_2n


def test_parse_basic():
    lam = parse_lattice("U*2+E8(-1)*2+A1(-1)")
    assert lam.rank == 21
    assert lam.signature == (2, 19)
    assert abs(lam.det) == 2


@pytest.mark.parametrize("text,pos", [("U*2+", 4), ("U**2", 2), ("Q7", 0), ("U+(1", 2)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(LatticeSyntaxError) as exc:
        parse_lattice(text)
    assert exc.value.position == pos


def test_raw_gram_and_validation():
    lam = parse_lattice("[2,1;1,2]")
    assert lam.det == 3
    with pytest.raises(LatticeError):
        parse_lattice("[1,0;0,2]")          # odd
    with pytest.raises(LatticeError):
        parse_lattice("[2,2;2,2]")          # degenerate


@pytest.mark.parametrize("expr,divs", [
    ("E8(-1)", ()),
    ("U*2+A1(-1)", (2,)),
    ("U*2+A1(-1)+A1(-3)", (2, 6)),
    ("D4(-1)", (2, 2)),
    ("A2(-1)", (3,)),
    ("E7(-1)", (2,)),
    ("E6(-1)", (3,)),
])
def test_discriminant_groups(expr, divs):
    D = parse_lattice(expr).discriminant_group
    assert D.elementary_divisors == divs


def test_kummer_classes():
    D = parse_lattice("U*2+A1(-1)+A1(-3)").discriminant_group
    half = D.element((1, 0))
    sixth = D.element((0, 1))
    assert half.order == 2 and half.q_exact() % 1 == Fraction(3, 4)
    assert sixth.order == 6 and sixth.q_exact() % 1 == Fraction(11, 12)


@given(signature_2n())
def test_group_order_is_det(lam):
    D = lam.discriminant_group
    assert D.order == abs(lam.det)
    # b is the polarization of q = (x, x)/2
    for g in list(D)[:6]:
        for h in list(D)[:6]:
            assert ((g + h).q - g.q - h.q - g.b(h)) % 1 == 0


@given(heegner_indices())
def test_primitive_representative(case):
    lam, idx = case
    rho = primitive_representative(lam, idx)
    assert is_primitive(rho)
    assert divisibility(lam, rho) == idx.d_mu
    assert lam.q(rho) == -idx.m * idx.d_mu ** 2
    assert lam.discriminant_group.element_of([Fraction(c, idx.d_mu) for c in rho]) == idx.mu


@given(heegner_indices())
def test_glue_determinants(case):
    lam, idx = case
    glue = glue_cosets(lam, primitive_representative(lam, idx), idx)
    L, K = glue.L, glue.K
    assert L.rank == lam.rank - 1
    assert abs(L.det) == 2 * idx.m * abs(lam.det)
    # kappa-index identity: det(L) det(K) = det(Lambda) [Lambda : L + K]^2
    assert abs(L.det) * abs(K.det) == abs(lam.det) * glue.kappa ** 2
    assert glue.kappa == 2 * idx.m * idx.d_mu
    assert len(glue.coset_reps) == glue.kappa


@given(heegner_indices())
def test_glue_grid_denominators(case):
    lam, idx = case
    glue = glue_cosets(lam, primitive_representative(lam, idx), idx)
    for rep in glue.coset_reps:
        assert (rep.alpha_L.q_exact() * 2 * glue.kappa).denominator == 1


def test_heegner_index_validation():
    D = k3_lattice(1).discriminant_group
    with pytest.raises(InvalidIndex):
        HeegnerIndex(Fraction(1, 3), D.element((1,)))
    with pytest.raises(InvalidIndex):
        HeegnerIndex(Fraction(-3, 4), D.element((1,)))


def test_k3_representative_d1():
    lam = k3_lattice(1)
    idx = HeegnerIndex(Fraction(1, 4), k3_class(lam, 1))
    rho = primitive_representative(lam, idx)
    assert lam.q(rho) == -1 and divisibility(lam, rho) == 2
    glue = glue_cosets(lam, rho, idx)
    assert glue.kappa == 1 and abs(glue.L.det) == 1


def test_unimodular_complement():
    lam = unimodular_lattice(4)
    idx = HeegnerIndex(1, lam.discriminant_group.zero)
    glue = glue_cosets(lam, primitive_representative(lam, idx), idx)
    assert glue.kappa == 2
    assert {rep.alpha_L.q_exact() % 1 for rep in glue.coset_reps} == {0, Fraction(1, 4)}


def test_search_without_marked_plane():
    lam = parse_lattice("[0,1;1,0]*2+A1(-1)*2")
    assert lam.hyperbolic_split_hint is None
    D = lam.discriminant_group
    for mu in D:
        m = (-mu.q_exact()) % 1 or Fraction(1)
        rho = primitive_representative(lam, HeegnerIndex(m, mu))
        assert not isinstance(rho, EmptyDivisor)
        assert lam.q(rho) == -m * mu.order ** 2 and divisibility(lam, rho) == mu.order


@given(st.integers(1, 30), st.integers(0, 59))
def test_k3_class_order(d, a):
    a %= 2 * d
    lam = k3_lattice(d)
    mu = k3_class(lam, a)
    from math import gcd
    assert mu.order == 2 * d // gcd(a, 2 * d)
    assert mu.q_exact() % 1 == Fraction(-a * a, 4 * d) % 1
