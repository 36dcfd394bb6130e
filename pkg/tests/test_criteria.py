import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from heegex.arith import Interval, primes_dividing
from heegex.criteria import (Certificate, ExtremalCertified, FormalDivisorCombination, Inconclusive,
                             _context, asymptotic_scan, check_fast_bound, check_full_degree, check_k3,
                             check_simple, decompose_H_in_P, decompose_P_in_H, fast_bound_lhs, full_sums,
                             k3_divisor_to_heegner, k3_fast_inequality, k3_nonempty, kummer_lattice,
                             pullback_heegner, r_square_divisors, run_ladder, simple_sums, table1_j,
                             verdict_json, verdict_kind)
from heegex.lattice import (EmptyDivisor, HeegnerIndex, InvalidIndex, glue_cosets, k3_class, k3_lattice,
                            parse_lattice, primitive_representative, unimodular_lattice)
from heegex.tables import K3_TABLE
from heegex.theta import theta_rank1

from strategies import heegner_indices, signature_2n


def _k3(d, m, a):
    lam = k3_lattice(d)
    return lam, HeegnerIndex(Fraction(m), k3_class(lam, a))


# ---------------------------------------------------------------- index arithmetic


def test_r_square_divisors():
    assert r_square_divisors(Fraction(1, 4), k3_lattice(1).discriminant_group) == [1]
    D0 = unimodular_lattice(4).discriminant_group
    assert r_square_divisors(4, D0) == [1, 2]
    assert r_square_divisors(1, D0) == [1]
    assert r_square_divisors(36, D0) == [1, 2, 3, 6]
    with pytest.raises(ValueError):
        r_square_divisors(0, D0)


def test_decomposition_examples():
    z = unimodular_lattice(4).discriminant_group.zero
    P4 = decompose_P_in_H(4, z)
    assert P4.terms == {("H", Fraction(4), z): 1, ("H", Fraction(1), z): -1}
    assert decompose_H_in_P(4, z).terms == {("P", Fraction(4), z): 1, ("P", Fraction(1), z): 1}
    assert decompose_P_in_H(3, z).terms == {("H", Fraction(3), z): 1}


def _symbol(kind, m, mu):
    f = FormalDivisorCombination()
    f.add(kind, m, mu, 1)
    return f


@given(heegner_indices(max_shift=12))
def test_moebius_roundtrip(case):
    _, idx = case
    m, mu = idx.m, idx.mu
    P_as_H = decompose_P_in_H(m, mu)
    assert P_as_H.substitute("H", decompose_H_in_P) == _symbol("P", m, mu)
    H_as_P = decompose_H_in_P(m, mu)
    assert H_as_P.substitute("P", decompose_P_in_H) == _symbol("H", m, mu)


# ---------------------------------------------------------------- pullback


def test_pullback_single_coset():
    lam, idx = _k3(1, Fraction(1, 4), 1)
    rho = primitive_representative(lam, idx)
    glue = glue_cosets(lam, rho, idx)
    assert glue.kappa == 1 and len(glue.coset_reps) == 1
    pb = pullback_heegner(glue, idx.m)
    zero = glue.L.discriminant_group.zero
    assert pb.terms[("H", Fraction(0), zero)] == theta_rank1(glue.N, Fraction(1, idx.d_mu), idx.m) == 2


@given(heegner_indices())
def test_pullback_constant_term(case):
    lam, idx = case
    rho = primitive_representative(lam, idx)
    glue = glue_cosets(lam, rho, idx)
    pb = pullback_heegner(glue, idx.m)
    zero = glue.L.discriminant_group.zero
    expected = 2 if idx.d_mu in (1, 2) else 1
    assert pb.terms.get(("H", Fraction(0), zero), 0) == expected
    assert all(t <= idx.m for (_, t, _) in pb.terms)


# ---------------------------------------------------------------- fast bound


def test_fast_trivial_kummer():
    K = kummer_lattice()
    D = K.discriminant_group
    for res, val in (((1, 0), Fraction(1, 8)), ((0, 1), Fraction(1, 24))):
        mu = D.element(res)
        v = check_fast_bound(K, HeegnerIndex(-mu.q_exact() % 1, mu))
        assert isinstance(v, ExtremalCertified)
        assert v.certificate.criterion_id == "FastTrivial" and v.certificate.lhs == val


def test_fast_bound_inconclusive_on_r4():
    lam = unimodular_lattice(4)
    v = check_fast_bound(lam, HeegnerIndex(1, lam.discriminant_group.zero))
    assert isinstance(v, Inconclusive)
    assert v.report["lhs"].lo > v.report["rhs"]


def _mp(x):
    return mpmath.mpf(x.numerator) / x.denominator


def _float_bound(n, D_lam, m, d_mu):
    # direct mpmath evaluation of the closed bound
    k = mpmath.mpf(n + 1) / 2
    DL = int(2 * m * D_lam)
    primes = primes_dividing(DL)
    if (n + 1) % 2 == 0:
        ki = (n + 1) // 2
        const = (2 * mpmath.pi) ** k * mpmath.zeta(ki - 1) * mpmath.zeta(ki) / (
            mpmath.sqrt(DL) * mpmath.gamma(k) * mpmath.zeta(2 * ki))
        local = {p: 1 for p in primes}
    else:
        s = n // 2
        sig = sum(mpmath.mpf(d) ** (1 - 2 * s) for d in range(1, DL + 1) if DL % d == 0)
        sig2 = sum(mpmath.mpf(d) ** (-s) for d in range(1, DL + 1) if DL % d == 0)
        const = (2 * mpmath.pi) ** k * mpmath.zeta(s) * sig * sig2 / (
            mpmath.sqrt(DL) * mpmath.gamma(k) * mpmath.zeta(2 * s))
        local = {p: 1 / (1 - mpmath.mpf(p) ** (-2 * s)) for p in primes}
    total = mpmath.mpf(0)
    for i in range(1, math.floor(4 * m * m * d_mu) + 1):
        f = mpmath.mpf(1)
        for p in primes:
            v, j = 0, i
            while j % p == 0:
                j //= p
                v += 1
            f *= (2 + 2 * v) * local[p]
        total += const * (mpmath.mpf(i) / _mp(4 * m * d_mu)) ** (k - 1) * f
    return total


@pytest.mark.parametrize("n,D_lam,m,d_mu", [(20, 1, Fraction(1), 1), (19, 2, Fraction(3, 4), 2),
                                            (35, 1, Fraction(2), 1), (19, 6, Fraction(2, 3), 3),
                                            (27, 1, Fraction(3), 1), (21, 3, Fraction(4, 3), 3)])
def test_fast_bound_encloses_float_evaluation(n, D_lam, m, d_mu):
    mpmath.mp.dps = 40
    iv, pieces = fast_bound_lhs(n, D_lam, m, d_mu)
    val = _float_bound(n, D_lam, m, d_mu)
    assert _mp(iv.lo) * (1 - mpmath.mpf(10) ** -25) <= val <= _mp(iv.hi) * (1 + mpmath.mpf(10) ** -25)
    # zeta enters through partial sums with explicit tail bounds
    assert iv.width <= iv.hi / 10 ** 10
    assert len(pieces) == math.floor(4 * m * m * d_mu)


# ---------------------------------------------------------------- coset criteria


@st.composite
def fast_trivial_index(draw):
    lam = draw(signature_2n(max_atoms=2))
    D = lam.discriminant_group
    cands = [g for g in D if (-g.q_exact()) % 1 and ((-g.q_exact()) % 1) ** 2 * g.order < Fraction(1, 4)]
    assume(cands)
    mu = draw(st.sampled_from(cands))
    return lam, HeegnerIndex((-mu.q_exact()) % 1, mu)


@given(fast_trivial_index())
def test_fast_trivial_implies_empty_grid(case):
    lam, idx = case
    assert idx.m ** 2 * idx.d_mu < Fraction(1, 4)
    ctx = _context(lam, idx, primitive_representative(lam, idx), None)
    sums = simple_sums(ctx)
    assert sums["cor"].lhs == 0 and sums["cor"].contributing_terms == ()
    assert sums["cor"].holds()
    full = full_sums(ctx)
    assert full.lhs == 0 and full.holds()


def test_simple_examples():
    lam, idx = _k3(1, Fraction(1, 4), 1)
    ctx = _context(lam, idx, primitive_representative(lam, idx), None)
    cor = simple_sums(ctx)["cor"]
    assert cor.lhs == 0 and cor.rhs == 2
    lam = unimodular_lattice(4)
    v = check_simple(lam, HeegnerIndex(1, lam.discriminant_group.zero))
    assert isinstance(v, ExtremalCertified) and v.certificate.contributing_terms


def test_full_degree_examples():
    lam, idx = _k3(12, Fraction(1, 48), 1)
    assert isinstance(check_full_degree(lam, idx), ExtremalCertified)
    lam = unimodular_lattice(8)
    v = check_full_degree(lam, HeegnerIndex(2, lam.discriminant_group.zero))
    assert isinstance(v, ExtremalCertified) and v.certificate.criterion_id == "FullDegree"


@given(heegner_indices(max_shift=1))
def test_full_equals_simple_without_square_divisors(case):
    lam, idx = case
    assume(r_square_divisors(idx.m, idx.mu.parent) == [1])
    ctx = _context(lam, idx, primitive_representative(lam, idx), None)
    cor, full = simple_sums(ctx)["cor"], full_sums(ctx)
    assert cor.lhs == full.lhs and cor.rhs == full.rhs


@pytest.mark.parametrize("d", [1, 4, 6, 10])
def test_certificates_replay(d):
    for m, a in K3_TABLE[d]:
        lam, idx = _k3(d, m, a)
        for crit in ("fast", "simple", "full"):
            v = run_ladder(lam, idx, crit)
            if isinstance(v, ExtremalCertified):
                cert = v.certificate
                replayed = cert.replay()
                if isinstance(cert.lhs, Interval):
                    assert cert.lhs.lo <= replayed.hi and replayed.lo <= cert.lhs.hi
                else:
                    assert replayed == cert.lhs
                assert cert.holds()
                rec = verdict_json(v, "x", idx)
                assert rec["verdict"] == "ExtremalCertified" and rec["criterion"] == cert.criterion_id


def test_certificate_strictness():
    assert not Certificate("SimpleCor", Fraction(2), Fraction(2)).holds()
    assert Certificate("FastBound", Interval(0, Fraction(1, 3)), Fraction(1, 2)).holds()
    assert not Certificate("FastBound", Interval(0, Fraction(1, 2)), Fraction(1, 2)).holds()


def test_ladder_reports_inconclusive():
    lam = unimodular_lattice(4)
    v = run_ladder(lam, HeegnerIndex(2, lam.discriminant_group.zero))
    assert verdict_kind(v) == "Inconclusive"
    assert set(v.report) == {"simple", "full"}


def test_signature_guard():
    lam = parse_lattice("U+A1(-1)")
    with pytest.raises(ValueError):
        run_ladder(lam, HeegnerIndex(Fraction(1, 4), lam.discriminant_group.element((1,))))


# ---------------------------------------------------------------- K3 frontends


def test_k3_dictionary():
    idx, f = k3_divisor_to_heegner(1, 1, 1)
    assert idx.m == Fraction(1, 4) and idx.mu == k3_class(k3_lattice(1), 1) and f == Fraction(1, 2)
    idx, f = k3_divisor_to_heegner(2, 1, 2)
    assert idx.m == Fraction(1, 2) and idx.mu.residues == (2,)
    with pytest.raises(InvalidIndex):
        k3_divisor_to_heegner(1, 2, 1)
    with pytest.raises(InvalidIndex):
        k3_divisor_to_heegner(1, 1, 3)
    with pytest.raises(InvalidIndex):
        k3_divisor_to_heegner(0, 1, 0)


def test_k3_examples():
    v = check_k3(2, 1, 1)
    assert isinstance(v, ExtremalCertified) and v.certificate.criterion_id == "FastTrivial"
    assert v.certificate.lhs == Fraction(1, 16)
    assert k3_fast_inequality(2, 1, 1)


@given(st.integers(1, 15), st.integers(0, 30), st.fractions(min_value=Fraction(1, 60), max_value=3,
                                                             max_denominator=60))
def test_k3_nonempty_matches_representative(d, a, m):
    a = a % (2 * d + 1)
    lam = k3_lattice(d)
    mu = k3_class(lam, a)
    try:
        idx = HeegnerIndex(m, mu)
    except InvalidIndex:
        assert not k3_nonempty(d, m, a)
        return
    assert k3_nonempty(d, m, a)
    rho = primitive_representative(lam, idx)
    assert not isinstance(rho, EmptyDivisor)
    assert lam.q(rho) == -m * idx.d_mu ** 2


def test_k3_nonempty_examples():
    assert k3_nonempty(1, Fraction(1, 4), 1)
    assert k3_nonempty(2, Fraction(1, 8), 1)
    assert all(k3_nonempty(d, 1, 0) for d in range(1, 30))
    assert not k3_nonempty(2, Fraction(1, 4), 1)


# ---------------------------------------------------------------- scans and families


def test_k3_scan_fast_path():
    rep = asymptotic_scan("k3", Fraction(1, 4), d_mu=2, values=range(1, 101))
    adm = [r for r in rep["rows"] if r.admissible]
    assert adm and all(r.certified for r in adm)
    assert {r.param for r in adm} == {d for d in range(1, 101) if d % 4 == 1}
    assert rep["threshold"] == 1


def test_rank_scan_threshold():
    rep = asymptotic_scan("rank", 1, values=range(1, 25), base="U*2", block="E8(-1)")
    assert rep["threshold"] is not None
    tail = [r for r in rep["rows"] if r.param >= rep["threshold"]]
    assert all(r.certified for r in tail)
    assert rep["monotone_tail"]
    with pytest.raises(ValueError):
        asymptotic_scan("bogus", 1, values=[1])


def test_table1_bands():
    assert [table1_j(r) for r in (4, 7, 8, 12, 13, 16, 17, 20, 21, 24)] == [1, 1, 2, 2, 3, 3, 4, 4, 5, 5]
    with pytest.raises(ValueError):
        table1_j(3)
