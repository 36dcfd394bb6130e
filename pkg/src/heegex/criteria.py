"""Extremality criteria for primitive Heegner divisors.

The ladder runs the cheap closed bound first, then the coset criterion with the
representative's own lift, then the full Moebius-weighted inequality. Every positive
answer carries a certificate whose two sides are exact rationals (or, for the closed
bound, a rigorous rational interval whose upper end is below the threshold).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd
from typing import Iterable, Sequence

from . import arith
from .arith import Interval
from .eisenstein import Coefficients, EisensteinCache
from .lattice import (DiscriminantElement, DiscriminantGroup, EmptyDivisor, GlueData, HeegnerIndex,
                      InvalidIndex, Lattice, RepresentativeNotFound, glue_cosets, k3_class,
                      k3_lattice, primitive_representative)
from .tables import UNIMODULAR_BANDS
from .theta import theta_rank1

CRITERIA = ("FastTrivial", "FastBound", "IntroThm", "SimpleCor", "FullDegree")


# ---------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class Term:
    """One summand theta * c (times the Moebius weight) of a criterion."""
    r: int
    mobius: int
    beta: tuple[int, ...]
    alpha: int
    gamma_L: tuple[int, ...]
    t: Fraction
    theta: int
    c: Fraction

    def value(self) -> Fraction:
        return -self.mobius * self.theta * self.c

    def to_json(self) -> dict:
        return {"r": self.r, "mobius": self.mobius, "beta": list(self.beta), "alpha": self.alpha,
                "gamma_L": list(self.gamma_L), "t": str(self.t), "theta": self.theta, "c": str(self.c)}


@dataclass(frozen=True)
class Certificate:
    criterion_id: str
    lhs: Fraction | Interval
    rhs: Fraction
    contributing_terms: tuple = ()

    def holds(self) -> bool:
        upper = self.lhs.hi if isinstance(self.lhs, Interval) else self.lhs
        return upper < self.rhs

    def replay(self) -> Fraction | Interval:
        """Recompute lhs from the stored terms."""
        if self.criterion_id == "FastTrivial":
            return self.lhs
        if self.criterion_id == "FastBound":
            total = Interval.point(0)
            for _, piece in self.contributing_terms:
                total = total + piece
            return total
        if self.criterion_id == "IntroThm":
            return sum((-term.mobius * term.c for term in self.contributing_terms), Fraction(0))
        return sum((term.value() for term in self.contributing_terms), Fraction(0))

    def to_json(self) -> dict:
        def fmt(x):
            if isinstance(x, Interval):
                return [str(x.lo), str(x.hi)]
            return str(x)
        if self.criterion_id == "FastBound":
            terms = [{"i": i, "bound": fmt(v)} for i, v in self.contributing_terms]
        else:
            terms = [t.to_json() for t in self.contributing_terms]
        return {"criterion": self.criterion_id, "lhs": fmt(self.lhs), "rhs": str(self.rhs), "terms": terms}


@dataclass(frozen=True)
class ExtremalCertified:
    certificate: Certificate
    kind = "ExtremalCertified"


@dataclass(frozen=True)
class Inconclusive:
    report: dict = field(default_factory=dict)
    kind = "Inconclusive"


Verdict = ExtremalCertified | Inconclusive | EmptyDivisor


def verdict_kind(v) -> str:
    return "EmptyDivisor" if isinstance(v, EmptyDivisor) else v.kind


def verdict_json(v, lattice_expr: str, idx: HeegnerIndex) -> dict:
    rec = {"lattice": lattice_expr, "m": str(idx.m), "mu": list(idx.mu.residues),
           "verdict": verdict_kind(v)}
    if isinstance(v, ExtremalCertified):
        rec.update(v.certificate.to_json())
    elif isinstance(v, Inconclusive):
        rec["criterion"] = None
        rec["report"] = _jsonable(v.report)
    else:
        rec["criterion"] = None
        rec["witness"] = v.witness
    return rec


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Interval):
        return [str(obj.lo), str(obj.hi)]
    if isinstance(obj, Certificate):
        return obj.to_json()
    return obj


# ---------------------------------------------------------------- formal divisors


@dataclass
class FormalDivisorCombination:
    """Rational combination of symbols (kind, t, gamma) with kind in {"H", "P"}."""
    terms: dict[tuple[str, Fraction, DiscriminantElement], Fraction] = field(default_factory=dict)

    def add(self, kind: str, t, gamma: DiscriminantElement, coeff) -> None:
        key = (kind, Fraction(t), gamma)
        val = self.terms.get(key, Fraction(0)) + Fraction(coeff)
        if val:
            self.terms[key] = val
        else:
            self.terms.pop(key, None)

    def __add__(self, other: "FormalDivisorCombination") -> "FormalDivisorCombination":
        out = FormalDivisorCombination(dict(self.terms))
        for (kind, t, g), c in other.terms.items():
            out.add(kind, t, g, c)
        return out

    def scaled(self, c) -> "FormalDivisorCombination":
        return FormalDivisorCombination({k: v * c for k, v in self.terms.items() if v * c})

    def substitute(self, kind: str, expansion) -> "FormalDivisorCombination":
        """Replace every symbol of ``kind`` by ``expansion(t, gamma)``."""
        out = FormalDivisorCombination()
        for (k, t, g), c in self.terms.items():
            if k == kind:
                out = out + expansion(t, g).scaled(c)
            else:
                out.add(k, t, g, c)
        return out

    def __eq__(self, other):
        return isinstance(other, FormalDivisorCombination) and self.terms == other.terms

    def __repr__(self):
        parts = [f"{c}*{k}_(-{t},{g})" for (k, t, g), c in sorted(
            self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2].residues))]
        return " + ".join(parts) or "0"


def _q_values(D: DiscriminantGroup) -> set[Fraction]:
    return {g.q_exact() % 1 for g in D}


def r_square_divisors(m, D: DiscriminantGroup) -> list[int]:
    """All r >= 1 with m / r^2 in Z - q(beta) for some beta in D."""
    m = Fraction(m)
    if m <= 0:
        raise ValueError("m must be positive")
    qs = _q_values(D)
    bound = 2 * D.exponent * m      # m / r^2 is a positive element of (1/2e)Z
    out = []
    r = 1
    while r * r <= bound:
        if (-(m / (r * r))) % 1 in qs:
            out.append(r)
        r += 1
    return out


def roots(mu: DiscriminantElement, r: int) -> list[DiscriminantElement]:
    """All beta in D with r * beta = mu."""
    return [b for b in mu.parent if b * r == mu]


def _admissible(m: Fraction, g: DiscriminantElement) -> bool:
    return (m + g.q_exact()).denominator == 1


def _decompose(m, mu: DiscriminantElement, kind: str, weighted: bool) -> FormalDivisorCombination:
    m = Fraction(m)
    out = FormalDivisorCombination()
    for r in r_square_divisors(m, mu.parent):
        w = arith.moebius(r) if weighted else 1
        if not w:
            continue
        for beta in roots(mu, r):
            if _admissible(m / (r * r), beta):
                out.add(kind, m / (r * r), beta, w)
    return out


def decompose_P_in_H(m, mu: DiscriminantElement) -> FormalDivisorCombination:
    """P_{-m,mu} = sum_{r^2 | m} moebius(r) sum_{r beta = mu} H_{-m/r^2, beta}."""
    return _decompose(m, mu, "H", True)


def decompose_H_in_P(m, mu: DiscriminantElement) -> FormalDivisorCombination:
    """H_{-m,mu} = sum_{r^2 | m} sum_{r beta = mu} P_{-m/r^2, beta}."""
    return _decompose(m, mu, "P", False)


# ---------------------------------------------------------------- pullback


def _t_values(gamma: DiscriminantElement, upper: Fraction, positive: bool = True) -> Iterable[Fraction]:
    t = (-gamma.q_exact()) % 1
    if positive and t == 0:
        t = Fraction(1)
    while t <= upper:
        yield t
        t += 1


def _split_reps(glue: GlueData, beta_lift: Sequence[Fraction]):
    """(j, class of (alpha_j + beta)_L, r with (alpha_j + beta)_K = r rho)."""
    out = []
    for rep in glue.coset_reps:
        x = [Fraction(a) + b for a, b in zip(rep.alpha, beta_lift)]
        gl, r = glue.split(x)
        out.append((rep.j, gl, r))
    return out


def pullback_heegner(glue: GlueData, m, beta_lift: Sequence | None = None) -> FormalDivisorCombination:
    """phi^* H_{-m, beta} as a combination of H^L symbols.

    ``beta_lift`` is a dual vector of Lambda fixing the preimage in Lambda^vee / (L + K);
    by default rho / div(rho).
    """
    m = Fraction(m)
    if beta_lift is None:
        beta_lift = [Fraction(c, glue.d_mu) for c in glue.rho]
    out = FormalDivisorCombination()
    for _, gl, r in _split_reps(glue, beta_lift):
        for t in _t_values(gl, m, positive=False):
            th = theta_rank1(glue.N, r, m - t)
            if th:
                out.add("H", t, gl, th)
    return out


# ---------------------------------------------------------------- fast bound


def _check_signature(lam: Lattice):
    p, n = lam.signature
    if p != 2 or n < 4:
        raise ValueError(f"criteria need signature (2, n) with n >= 4, got {lam.signature}")


def fast_bound_lhs(n: int, D_lam: int, m: Fraction, d_mu: int) -> tuple[Interval, list]:
    """Rigorous enclosure of the closed-form bound and its per-i pieces."""
    m = Fraction(m)
    k = Fraction(n + 1, 2)
    DL = 2 * m * D_lam
    if DL.denominator != 1:
        raise ValueError("2 m D_Lambda is not an integer")
    DL = int(DL)
    pi = arith.pi_interval()
    two_pi_k = (2 * pi) ** int(k) if k.denominator == 1 else (2 * pi) ** int(k - Fraction(1, 2)) * (2 * pi).sqrt()
    sqrt_dl = Interval.point(DL).sqrt()
    gamma = arith.gamma_interval(k)
    primes = arith.primes_dividing(DL)
    if k.denominator == 1:
        ki = int(k)
        const = two_pi_k * arith.zeta_interval(ki - 1) * arith.zeta_interval(ki) / (
            sqrt_dl * gamma * arith.zeta_interval(2 * ki))
        local = {p: Fraction(1) for p in primes}
    else:
        s = int(k - Fraction(1, 2))         # k - 1/2
        const = two_pi_k * arith.zeta_interval(s) * arith.sigma(2 - 2 * int(k + Fraction(1, 2)) + 1, DL) \
            * arith.sigma(-s, DL) / (sqrt_dl * gamma * arith.zeta_interval(2 * s))
        local = {p: 1 / (1 - Fraction(p) ** (-2 * s)) for p in primes}
    total = Interval.point(0)
    pieces = []
    upper = floor(4 * m * m * d_mu)
    for i in range(1, upper + 1):
        factor = Fraction(1)
        for p in primes:
            factor *= (2 + 2 * _ord(i, p)) * local[p]
        piece = const * arith.pow_interval(Fraction(i) / (4 * m * d_mu), k - 1) * factor
        pieces.append((i, piece))
        total = total + piece
    return total, pieces


def _ord(i: int, p: int) -> int:
    v = 0
    while i % p == 0:
        i //= p
        v += 1
    return v


def fast_rhs(m: Fraction, d_mu: int) -> Fraction:
    return 1 / ((2 if d_mu in (1, 2) else 4) * m * d_mu)


def check_fast_bound(lam: Lattice, idx: HeegnerIndex) -> Verdict:
    _check_signature(lam)
    m, d = idx.m, idx.d_mu
    val = m * m * d
    if val < Fraction(1, 4):
        return ExtremalCertified(Certificate("FastTrivial", val, Fraction(1, 4)))
    n = lam.signature[1]
    lhs, pieces = fast_bound_lhs(n, abs(lam.det), m, d)
    cert = Certificate("FastBound", lhs, fast_rhs(m, d), tuple(pieces))
    if cert.holds():
        return ExtremalCertified(cert)
    return Inconclusive({"criterion": "FastBound", "lhs": lhs, "rhs": cert.rhs})


# ---------------------------------------------------------------- coset criteria


@dataclass
class _Context:
    lam: Lattice
    idx: HeegnerIndex
    rho: tuple
    glue: GlueData
    coeffs: Coefficients


def _context(lam: Lattice, idx: HeegnerIndex, rho, cache: EisensteinCache | None) -> _Context:
    glue = glue_cosets(lam, rho, idx)
    return _Context(lam, idx, tuple(rho), glue, Coefficients(glue.L, cache))


def simple_sums(ctx: _Context) -> dict:
    """Both sides of the simple criterion, with theta weights and in the unweighted form."""
    glue, m = ctx.glue, ctx.idx.m
    beta = [Fraction(c, glue.d_mu) for c in glue.rho]
    cor_terms, intro_terms = [], []
    rhs_theta = None
    for j, gl, r in _split_reps(glue, beta):
        if j == 0:
            rhs_theta = theta_rank1(glue.N, r, m)
        for t in _t_values(gl, m):
            c = ctx.coeffs(gl, t)
            th = theta_rank1(glue.N, r, m - t)
            intro_terms.append(Term(1, 1, ctx.idx.mu.residues, j, gl.residues, t, 1, c))
            if th:
                cor_terms.append(Term(1, 1, ctx.idx.mu.residues, j, gl.residues, t, th, c))
    d = ctx.idx.d_mu
    expected = 2 if d in (1, 2) else 1
    if rhs_theta != expected:
        raise AssertionError(f"theta(m, mu_K) = {rhs_theta}, expected {expected}")
    return {
        "cor": Certificate("SimpleCor", sum((t.value() for t in cor_terms), Fraction(0)),
                           Fraction(expected), tuple(cor_terms)),
        "intro": Certificate("IntroThm", sum((-t.c for t in intro_terms), Fraction(0)),
                             Fraction(1) if (ctx.idx.mu * 2).is_zero() else Fraction(1, 2),
                             tuple(intro_terms)),
    }


def full_sums(ctx: _Context) -> Certificate:
    glue, m, mu = ctx.glue, ctx.idx.m, ctx.idx.mu
    lhs_terms, rhs = [], Fraction(0)
    for r in r_square_divisors(m, mu.parent):
        w = arith.moebius(r)
        if not w:
            continue
        mr = m / (r * r)
        for beta in roots(mu, r):
            if not _admissible(mr, beta):
                continue
            lift = beta.lift()
            for j, gl, rk in _split_reps(glue, lift):
                if gl.is_zero():
                    rhs += w * theta_rank1(glue.N, rk, mr)
                for t in _t_values(gl, mr):
                    th = theta_rank1(glue.N, rk, mr - t)
                    if th:
                        lhs_terms.append(Term(r, w, beta.residues, j, gl.residues, t, th, ctx.coeffs(gl, t)))
    lhs = sum((t.value() for t in lhs_terms), Fraction(0))
    return Certificate("FullDegree", lhs, rhs, tuple(lhs_terms))


def representative(lam: Lattice, idx: HeegnerIndex):
    try:
        return primitive_representative(lam, idx)
    except RepresentativeNotFound as exc:
        return Inconclusive({"reason": str(exc)})


def check_simple(lam: Lattice, idx: HeegnerIndex, rho=None, cache: EisensteinCache | None = None) -> Verdict:
    _check_signature(lam)
    if rho is None:
        rho = representative(lam, idx)
        if not isinstance(rho, tuple):
            return rho
    sums = simple_sums(_context(lam, idx, rho, cache))
    for key in ("intro", "cor"):
        if sums[key].holds():
            return ExtremalCertified(sums[key])
    return Inconclusive({"criterion": "SimpleCor", "cor": sums["cor"], "intro": sums["intro"]})


def check_full_degree(lam: Lattice, idx: HeegnerIndex, rho=None, cache: EisensteinCache | None = None) -> Verdict:
    _check_signature(lam)
    if rho is None:
        rho = representative(lam, idx)
        if not isinstance(rho, tuple):
            return rho
    cert = full_sums(_context(lam, idx, rho, cache))
    if cert.holds():
        return ExtremalCertified(cert)
    return Inconclusive({"criterion": "FullDegree", "lhs": cert.lhs, "rhs": cert.rhs})


def run_ladder(lam: Lattice, idx: HeegnerIndex, criterion: str = "auto",
               cache: EisensteinCache | None = None) -> Verdict:
    """Cheapest-first: fast bound, then the simple criteria, then the full inequality."""
    _check_signature(lam)
    if criterion in ("auto", "fast"):
        v = check_fast_bound(lam, idx)
        if isinstance(v, ExtremalCertified) or criterion == "fast":
            return v
    rho = representative(lam, idx)
    if not isinstance(rho, tuple):
        return rho
    reports = {}
    if criterion in ("auto", "simple"):
        v = check_simple(lam, idx, rho, cache)
        if isinstance(v, ExtremalCertified) or criterion == "simple":
            return v
        reports["simple"] = v.report
    if criterion in ("auto", "full"):
        v = check_full_degree(lam, idx, rho, cache)
        if isinstance(v, ExtremalCertified) or criterion == "full":
            return v
        reports["full"] = v.report
    return Inconclusive(reports)


# ---------------------------------------------------------------- K3 frontends


def k3_divisor_to_heegner(d: int, h: int, a: int) -> tuple[HeegnerIndex, Fraction]:
    """D_{h,a} on F_2d as a Heegner index on Lambda_2d, with its multiplicity factor."""
    if d < 1 or not 0 <= a <= 2 * d:
        raise InvalidIndex(f"need d >= 1 and 0 <= a <= 2d, got d={d}, a={a}")
    m = Fraction(a * a, 4 * d) - (h - 1)
    if m <= 0:
        raise InvalidIndex(f"m = {m} <= 0: no Noether-Lefschetz divisor D_({h},{a})")
    lam = k3_lattice(d)
    factor = Fraction(1, 2) if a % d == 0 else Fraction(1)
    return HeegnerIndex(m, k3_class(lam, a)), factor


def k3_fast_inequality(d: int, h: int, a: int) -> bool:
    m = Fraction(a * a, 4 * d) - (h - 1)
    return m * m * Fraction(8 * d, gcd(a, 2 * d)) < 1


def check_k3(d: int, h: int, a: int, criterion: str = "auto", cache: EisensteinCache | None = None) -> Verdict:
    idx, _ = k3_divisor_to_heegner(d, h, a)
    lam = idx.lattice
    if k3_fast_inequality(d, h, a) and criterion in ("auto", "fast"):
        return ExtremalCertified(Certificate("FastTrivial", idx.m ** 2 * idx.d_mu, Fraction(1, 4)))
    return run_ladder(lam, idx, criterion, cache)


def k3_nonempty(d: int, m, a: int) -> bool:
    """Whether P_{-m, a l*} on F_2d is nonempty.

    Lambda_2d splits U, so a primitive representative exists exactly when the index is
    admissible, i.e. kappa * gcd(a, 2d) = a^2 mod 4d with kappa = 2 m d_mu.
    """
    m = Fraction(m)
    if m <= 0:
        return False
    g = gcd(a, 2 * d)
    d_mu = 2 * d // g
    kappa = 2 * m * d_mu
    if kappa.denominator != 1:
        return False
    return (int(kappa) * g - a * a) % (4 * d) == 0


# ---------------------------------------------------------------- scans


@dataclass
class ScanRow:
    param: int
    admissible: bool
    certified: bool
    lhs: Interval | Fraction | None
    rhs: Fraction | None


def asymptotic_scan(mode: str, m, d_mu: int | None = None, values: Iterable[int] = (),
                    base: str | None = None, block: str | None = None) -> dict:
    """Run the closed bound along a family and report where it starts certifying.

    mode "k3": Lambda_2d for d in ``values`` with mu = a l* of order ``d_mu``.
    mode "rank": the lattice ``base + block*r`` for r in ``values`` with mu = 0.
    """
    from .lattice import parse_lattice
    if mode not in ("k3", "rank"):
        raise ValueError(f"unknown scan mode {mode!r}")
    m = Fraction(m)
    rows: list[ScanRow] = []
    for v in values:
        if mode == "k3":
            lam = k3_lattice(v)
            cands = [a for a in range(0, 2 * v) if 2 * v // gcd(a, 2 * v) == d_mu and k3_nonempty(v, m, a)]
            if not cands:
                rows.append(ScanRow(v, False, False, None, None))
                continue
            idx = HeegnerIndex(m, k3_class(lam, cands[0]))
        elif mode == "rank":
            lam = parse_lattice(f"{base}+{block}*{v}" if v else base)
            mu = lam.discriminant_group.zero
            try:
                idx = HeegnerIndex(m, mu)
            except InvalidIndex:
                rows.append(ScanRow(v, False, False, None, None))
                continue
        try:
            verdict = check_fast_bound(lam, idx)
        except ValueError:
            rows.append(ScanRow(v, True, False, None, None))
            continue
        if isinstance(verdict, ExtremalCertified):
            cert = verdict.certificate
            rows.append(ScanRow(v, True, True, cert.lhs, cert.rhs))
        else:
            rows.append(ScanRow(v, True, False, verdict.report.get("lhs"), verdict.report.get("rhs")))
    threshold = None
    for row in reversed(rows):
        if row.admissible and not row.certified:
            break
        if row.admissible:
            threshold = row.param
    values_seen = [float(r.lhs) for r in rows if r.admissible and r.lhs is not None]
    monotone = all(a >= b for a, b in zip(values_seen, values_seen[1:]))
    return {"mode": mode, "m": m, "rows": rows, "threshold": threshold, "monotone_tail": monotone}


# ---------------------------------------------------------------- canned families


def kummer_lattice() -> Lattice:
    from .lattice import parse_lattice
    return parse_lattice("U*2+A1(-1)+A1(-3)")


def table1_j(r: int) -> int:
    for lo, hi, j in UNIMODULAR_BANDS:
        if lo <= r <= hi:
            return j
    raise ValueError(f"r = {r} outside the tabulated range 4..24")


__all__ = ["CRITERIA", "Term", "Certificate", "ExtremalCertified", "Inconclusive", "EmptyDivisor",
           "verdict_kind", "verdict_json", "FormalDivisorCombination", "r_square_divisors", "roots",
           "decompose_P_in_H", "decompose_H_in_P", "pullback_heegner", "fast_bound_lhs", "fast_rhs",
           "check_fast_bound", "simple_sums", "full_sums", "check_simple", "check_full_degree",
           "run_ladder", "k3_divisor_to_heegner", "k3_fast_inequality", "check_k3", "k3_nonempty",
           "ScanRow", "asymptotic_scan", "kummer_lattice", "table1_j"]
