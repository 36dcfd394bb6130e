"""Hypothesis strategies shared by the property suites."""
from fractions import Fraction

from hypothesis import strategies as st

from heegex.lattice import HeegnerIndex, parse_lattice

NEG_ATOMS = ["A1(-1)", "A1(-2)", "A1(-3)", "A1(-5)", "A1(-6)", "A2(-1)", "A3(-1)", "D4(-1)", "A1(-1)*2",
             "E6(-1)", "E7(-1)", "E8(-1)", "A2(-2)", "D5(-1)"]


@st.composite
def signature_2n(draw, max_atoms=3):
    """U*2 plus a negative-definite tail; signature (2, n) with n >= 4."""
    atoms = draw(st.lists(st.sampled_from(NEG_ATOMS), min_size=1, max_size=max_atoms))
    expr = "+".join(["U*2"] + atoms)
    lam = parse_lattice(expr)
    if lam.signature[1] < 4:
        lam = parse_lattice(expr + "+A1(-1)")
    return lam


@st.composite
def heegner_indices(draw, max_atoms=2, max_shift=2):
    lam = draw(signature_2n(max_atoms))
    D = lam.discriminant_group
    res = tuple(draw(st.integers(0, d - 1)) for d in D.elementary_divisors)
    mu = D.element(res)
    base = (-mu.q_exact()) % 1
    m = base + draw(st.integers(0 if base else 1, max_shift))
    return lam, HeegnerIndex(Fraction(m), mu)
