"""Self-intersection volumes of Heegner divisors from the genus-2 Eisenstein pullback.

Numeric and heuristic: the certifying path lives in ``criteria``; this module is an
independent sign check. Forms are vector-valued for the Weil representation of
Lambda(-1), so a coefficient of index (n, nu) has n in Z - q(nu).

Poincare series are normalized so that P_{m,mu} = e(m tau)(e_mu + e_-mu) + O(cusp-sum),
i.e. half the sum over Gamma_infty backslash Mp_2(Z) of e(m tau) e_mu.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Mapping

import mpmath

from . import arith
from .criteria import (ExtremalCertified, r_square_divisors, roots, run_ladder, verdict_kind)
from .eisenstein import Coefficients, EisensteinCache
from .lattice import DiscriminantElement, HeegnerIndex, Lattice

DEFAULT_PREC = 128
DEFAULT_DEPTH = 20


@dataclass(frozen=True)
class NumericValue:
    value: mpmath.mpf
    trunc_error: mpmath.mpf

    def __post_init__(self):
        if self.trunc_error < 0:
            raise ValueError("negative error estimate")

    @property
    def sign(self) -> int | None:
        """Sign of the value when it clears ten times the error estimate, else None."""
        if abs(self.value) > 10 * self.trunc_error:
            return 1 if self.value > 0 else -1
        return None

    def __add__(self, other: "NumericValue") -> "NumericValue":
        return NumericValue(self.value + other.value, self.trunc_error + other.trunc_error)

    def scale(self, c) -> "NumericValue":
        c = mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpf(c)
        return NumericValue(self.value * c, self.trunc_error * abs(c))

    def to_json(self) -> dict:
        s = self.sign
        err = float(self.trunc_error) if mpmath.isfinite(self.trunc_error) else "inf"
        return {"value": float(self.value), "err": err,
                "sign": "unresolved" if s is None else f"{s:+d}" if s else "0"}


@dataclass(frozen=True)
class PoincareIndex:
    m: Fraction
    mu: DiscriminantElement

    def __post_init__(self):
        object.__setattr__(self, "m", Fraction(self.m))
        if self.m <= 0 or (self.m + self.mu.q_exact()).denominator != 1:
            raise ValueError(f"invalid Poincare index ({self.m}, {self.mu})")

    @property
    def weight(self) -> Fraction:
        return 1 + Fraction(self.mu.parent.lattice.signature[1], 2)


# ---------------------------------------------------------------- Weil representation


def _mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def _word(a: int, b: int, c: int, d: int) -> list:
    """Generators (('T', q), ('S',), ('Z',)) multiplying to (a b; c d) in SL_2(Z)."""
    out = []
    while c:
        q = a // c
        out.append(("T", q))
        a, b = a - q * c, b - q * d
        out.append(("S",))
        a, b, c, d = c, d, -a, -b
    if a == -1:
        out.append(("Z",))
        b = -b
    out.append(("T", b))
    return out


def _metaplectic_sign(word, c: int, d: int) -> int:
    """+1 if the product of the standard lifts is (M, sqrt(c tau + d)), else -1."""
    tau = complex(0.137, 1.29)
    phi = 1
    for g in reversed(word):
        if g[0] == "T":
            tau = tau + g[1]
        elif g[0] == "S":
            phi *= cmath.sqrt(tau)
            tau = -1 / tau
        else:
            phi *= 1j
    ratio = phi / cmath.sqrt(c * complex(0.137, 1.29) + d)
    if abs(ratio - 1) < 1e-6:
        return 1
    if abs(ratio + 1) < 1e-6:
        return -1
    raise AssertionError(f"metaplectic ratio {ratio}")


class WeilRep:
    """rho for Lambda(-1) on C[D(Lambda)], evaluated in mpmath at the working precision."""

    def __init__(self, lattice: Lattice, prec: int = DEFAULT_PREC):
        self.lattice = lattice
        self.prec = prec
        D = lattice.discriminant_group
        self.D = D
        self.elems = list(D)
        self.index = {g: i for i, g in enumerate(self.elems)}
        self.sig = lattice.signature[1] - lattice.signature[0]      # signature of Lambda(-1)
        with mpmath.workprec(prec):
            self._t_inv = [self._e(g.q_exact()) for g in self.elems]  # e(-q_M) = e(q_Lambda)
            n = len(self.elems)
            scale = self._e(Fraction(self.sig, 8)) / mpmath.sqrt(n)
            # rho(S)^{-1} = rho(S)^*, entries e(sig/8)/sqrt|D| e(b_M(g, h)) = ... e(-b_Lambda)
            self._s_inv = [[scale * self._e(-g.b(h)) for h in self.elems] for g in self.elems]
            self._z_inv = self._e(Fraction(self.sig, 4))
            self._neg = [self.index[-g] for g in self.elems]
            self._zz_inv = self._e(Fraction(self.sig, 2))

    @staticmethod
    @lru_cache(maxsize=None)
    def _e_cached(x: Fraction, prec: int):
        with mpmath.workprec(prec):
            return mpmath.expjpi(2 * _mpf(x % 1))

    def _e(self, x: Fraction):
        return self._e_cached(Fraction(x) % 1, self.prec)

    def _apply_inv(self, g, v):
        if g[0] == "T":
            q = g[1]
            return [x * self._t_inv[i] ** q if q >= 0 else x / self._t_inv[i] ** (-q) for i, x in enumerate(v)]
        if g[0] == "S":
            n = len(v)
            return [mpmath.fsum(self._s_inv[j][i] * v[j] for j in range(n) if v[j]) for i in range(n)]
        out = [mpmath.mpc(0)] * len(v)
        for i, x in enumerate(v):
            out[self._neg[i]] = x * self._z_inv
        return out

    def inverse_column(self, a: int, b: int, c: int, d: int, mu: DiscriminantElement):
        """rho(M~)^{-1} e_mu for M = (a b; c d) with the lift sqrt(c tau + d)."""
        word = _word(a, b, c, d)
        sign = _metaplectic_sign(word, c, d)
        with mpmath.workprec(self.prec):
            v = [mpmath.mpc(0)] * len(self.elems)
            v[self.index[mu]] = mpmath.mpc(1)
            for g in word:
                v = self._apply_inv(g, v)
            if sign < 0:
                v = [x * self._zz_inv for x in v]
        return v


@lru_cache(maxsize=64)
def _weil(lattice: Lattice, prec: int) -> WeilRep:
    return WeilRep(lattice, prec)


@lru_cache(maxsize=None)
def _kloosterman(lattice: Lattice, prec: int, c: int, m: Fraction, mu_res, n: Fraction, nu_res):
    """H_c(m, mu, n, nu) without the e(-k/4)/c prefactor."""
    W = _weil(lattice, prec)
    D = W.D
    nu = D.element(nu_res)
    j = W.index[nu]
    with mpmath.workprec(prec):
        acc = mpmath.mpc(0)
        for d in range(c):
            if gcd(d, c) != 1:
                continue
            a = pow(d, -1, c) if c > 1 else 0
            b = (a * d - 1) // c
            col = _columns(lattice, prec, a, b, c, d, mu_res)
            acc += col[j] * mpmath.expjpi(2 * _mpf((m * a + n * d) / c % 1))
    return acc


@lru_cache(maxsize=None)
def _columns(lattice, prec, a, b, c, d, mu_res):
    W = _weil(lattice, prec)
    return W.inverse_column(a, b, c, d, W.D.element(mu_res))


# ---------------------------------------------------------------- Poincare coefficients


def _bessel_bound(nu, x):
    # |J_nu(x)| <= min(1, (x/2)^nu / Gamma(nu + 1)) for nu >= 0
    return min(mpmath.mpf(1), (x / 2) ** nu / mpmath.gamma(nu + 1))


def c_tail_bound(k: Fraction, n: Fraction, depth: int, prec: int = DEFAULT_PREC):
    """Bound for the c > depth part of one Poincare coefficient (both signs of mu)."""
    with mpmath.workprec(prec):
        kk = _mpf(Fraction(k))
        nn = _mpf(Fraction(n))
        # 2 pi (n/m)^{(k-1)/2} |J(4 pi sqrt(mn)/c)| <= 2 pi (2 pi n)^{k-1} c^{1-k} / Gamma(k)
        return 2 * 2 * mpmath.pi * (2 * mpmath.pi * nn) ** (kk - 1) / mpmath.gamma(kk) \
            * mpmath.mpf(depth) ** (2 - kk) / (kk - 2)


def poincare_coefficient(lattice: Lattice, idx: PoincareIndex, n, nu: DiscriminantElement,
                         depth: int = DEFAULT_DEPTH, prec: int = DEFAULT_PREC) -> NumericValue:
    """Coefficient of index (n, nu) of P_{m,mu}, with the c-sum cut at c <= depth."""
    n = Fraction(n)
    k = idx.weight
    if k <= 2:
        raise ValueError(f"weight {k} <= 2: Poincare series do not converge absolutely")
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if n <= 0 or (n + nu.q_exact()).denominator != 1:
        return NumericValue(mpmath.mpf(0), mpmath.mpf(0))
    m, mu = idx.m, idx.mu
    with mpmath.workprec(prec):
        delta = mpmath.mpf(0)
        if n == m:
            delta += int(nu == mu) + int(nu == -mu)
        kk = _mpf(k)
        pref = 2 * mpmath.pi * (_mpf(n) / _mpf(m)) ** ((kk - 1) / 2) * mpmath.expjpi(-kk / 2)
        arg = 4 * mpmath.pi * mpmath.sqrt(_mpf(m * n))
        total = mpmath.mpc(0)
        for c in range(1, depth + 1):
            h = sum((_kloosterman(lattice, prec, c, m, s.residues, n, nu.residues)
                     for s in {mu, -mu}), mpmath.mpc(0)) if mu != -mu else \
                2 * _kloosterman(lattice, prec, c, m, mu.residues, n, nu.residues)
            total += h / c * mpmath.besselj(kk - 1, arg / c)
        val = delta + pref * total
        if abs(mpmath.im(val)) > mpmath.mpf(10) ** (-prec // 8):
            raise AssertionError(f"non-real Poincare coefficient {val}")
        return NumericValue(mpmath.re(val), c_tail_bound(k, n, depth, prec))


def poincare_size_bound(k: Fraction, M: Fraction, n: Fraction, prec: int = DEFAULT_PREC):
    """Crude bound for |c_{n,nu}(P_{M,.})| used to close the w_2 tail."""
    with mpmath.workprec(prec):
        kk, MM, nn = _mpf(k), _mpf(M), _mpf(n)
        x = 4 * mpmath.pi * mpmath.sqrt(MM * nn)
        # c below x / 2 keeps the trivial bound 1; beyond it the power bound
        cut = int(mpmath.ceil(x)) + 1
        s = sum(_bessel_bound(kk - 1, x / c) for c in range(1, cut + 1))
        s += (x / 2) ** (kk - 1) / mpmath.gamma(kk) * mpmath.mpf(cut) ** (2 - kk) / (kk - 2)
        return 2 * 2 * mpmath.pi * (nn / MM) ** ((kk - 1) / 2) * s + (2 if M == n else 0)


# ---------------------------------------------------------------- volume formulas


def g_aux(idx: HeegnerIndex, coefficients: Callable | Mapping):
    """sum over r^2 | m of moebius(r) sum_{r alpha = mu} c_{m/r^2, alpha}(f)."""
    get = coefficients if callable(coefficients) else (lambda t, g: coefficients[(t, g)])
    total = None
    for r in r_square_divisors(idx.m, idx.mu.parent):
        w = arith.moebius(r)
        if not w:
            continue
        for a in roots(idx.mu, r):
            t = idx.m / (r * r)
            if (t + a.q_exact()).denominator != 1:
                continue
            try:
                term = get(t, a)
            except KeyError as exc:
                raise KeyError(f"missing coefficient c_({t}, {a})") from exc
            term = term.scale(w) if isinstance(term, NumericValue) else w * term
            total = term if total is None else total + term
    return total if total is not None else Fraction(0)


def _eis(lattice: Lattice, cache: EisensteinCache | None):
    coeffs = Coefficients(lattice, cache)
    return lambda t, g: coeffs(g, t)


def _correction(lattice: Lattice, m1: Fraction, a1: DiscriminantElement, target: Callable,
                E: Callable, depth: int, prec: int) -> NumericValue:
    """2 sum_{w1^2|m1} sum_{w1 b = a1} c_{m1/w1^2, b}(E) sum_{(w1,w2)=1} target(P_{m1 w2^2/w1^2, w2 b})."""
    k = 1 + Fraction(lattice.signature[1], 2)
    total = NumericValue(mpmath.mpf(0), mpmath.mpf(0))
    for w1 in r_square_divisors(m1, a1.parent):
        for b in roots(a1, w1):
            t = m1 / (w1 * w1)
            if (t + b.q_exact()).denominator != 1:
                continue
            ce = E(t, b)
            if not ce:
                continue
            inner = NumericValue(mpmath.mpf(0), mpmath.mpf(0))
            for w2 in range(1, depth + 1):
                if gcd(w1, w2) != 1:
                    continue
                inner = inner + target(PoincareIndex(t * w2 * w2, b * w2))
            inner = NumericValue(inner.value, inner.trunc_error + _w2_tail(target, k, t, depth, prec))
            total = total + inner.scale(2 * ce)
    return total


def _w2_tail(target, k, t, depth, prec):
    n_max = getattr(target, "n_max", None)
    weight = getattr(target, "weight", 1)
    if n_max is None:
        return mpmath.mpf(0)
    if k <= 3:
        # the size bound is not summable in w2; leave the sign unresolved
        return mpmath.inf
    with mpmath.workprec(prec):
        acc = mpmath.mpf(0)
        for w2 in range(depth + 1, 4 * depth + 1):
            acc += poincare_size_bound(k, t * w2 * w2, n_max, prec)
        # the bound decays like w2^{2-k}; close the rest with the integral
        last = poincare_size_bound(k, t * (4 * depth) ** 2, n_max, prec)
        acc += last * 4 * depth / (_mpf(k) - 3)
        return acc * weight


class _Target:
    """Evaluates a fixed combination of coefficients of a Poincare series."""

    def __init__(self, lattice, points, depth, prec):
        self.lattice = lattice
        self.points = points            # list of (weight, n, nu)
        self.depth = depth
        self.prec = prec
        self.n_max = max(n for _, n, _ in points)
        self.weight = sum(abs(w) for w, _, _ in points)

    def __call__(self, pidx: PoincareIndex) -> NumericValue:
        out = NumericValue(mpmath.mpf(0), mpmath.mpf(0))
        for w, n, nu in self.points:
            out = out + poincare_coefficient(self.lattice, pidx, n, nu, self.depth, self.prec).scale(w)
        return out


def _g_points(idx: HeegnerIndex) -> list:
    pts = []
    for r in r_square_divisors(idx.m, idx.mu.parent):
        w = arith.moebius(r)
        if not w:
            continue
        for a in roots(idx.mu, r):
            t = idx.m / (r * r)
            if (t + a.q_exact()).denominator == 1:
                pts.append((w, t, a))
    return pts


def vol_ratio_H_product(lattice: Lattice, first: tuple, second: tuple, depth: int = DEFAULT_DEPTH,
                        prec: int = DEFAULT_PREC, cache: EisensteinCache | None = None) -> NumericValue:
    """vol(H_{-m1,a1} . H_{-m2,a2}) / vol(F_Lambda)."""
    (m1, a1), (m2, a2) = first, second
    m1, m2 = Fraction(m1), Fraction(m2)
    E = _eis(lattice, cache)
    with mpmath.workprec(prec):
        main = _mpf(E(m1, a1) * E(m2, a2))
        corr = _correction(lattice, m1, a1, _Target(lattice, [(1, m2, a2)], depth, prec), E, depth, prec)
        return NumericValue(main + corr.value, corr.trunc_error)


def vol_ratio_P_squared(lattice: Lattice, idx: HeegnerIndex, depth: int = DEFAULT_DEPTH,
                        prec: int = DEFAULT_PREC, cache: EisensteinCache | None = None) -> NumericValue:
    """vol(P^2_{-m,mu}) / vol(F_Lambda)."""
    E = _eis(lattice, cache)
    g_e = g_aux(idx, E)
    target = _Target(lattice, _g_points(idx), depth, prec)
    total = NumericValue(mpmath.mpf(0), mpmath.mpf(0))
    with mpmath.workprec(prec):
        for w, t, a in _g_points(idx):
            total = total + _correction(lattice, t, a, target, E, depth, prec).scale(w)
        return NumericValue(_mpf(g_e * g_e) + total.value, total.trunc_error)


def splits_two_hyperbolic_planes(lattice: Lattice) -> bool:
    u = ((0, 1), (1, 0))
    return sum(1 for b in lattice.blocks if lattice.block_gram(b) == u) >= 2


def sign_crosscheck(lattice: Lattice, idx: HeegnerIndex, depth: int = DEFAULT_DEPTH,
                    prec: int = DEFAULT_PREC, cache: EisensteinCache | None = None) -> dict:
    """Run the degree ladder and the volume method side by side."""
    if not splits_two_hyperbolic_planes(lattice):
        return {"status": "hypothesis", "reason": "lattice does not split off U + U"}
    verdict = run_ladder(lattice, idx, "auto", cache)
    vol = vol_ratio_P_squared(lattice, idx, depth, prec, cache)
    degree_negative = isinstance(verdict, ExtremalCertified)
    sign = vol.sign
    if sign is None:
        status = "indeterminate"
    elif degree_negative:
        status = "agreement" if sign < 0 else "disagreement"
    else:
        # an inconclusive ladder makes no claim; any resolved sign is compatible
        status = "agreement" if sign > 0 else "volume-only"
    return {"status": status, "degree": verdict_kind(verdict), "volume": vol.to_json()}


__all__ = ["NumericValue", "PoincareIndex", "WeilRep", "poincare_coefficient",
           "g_aux", "vol_ratio_H_product", "vol_ratio_P_squared", "sign_crosscheck",
           "splits_two_hyperbolic_planes", "c_tail_bound", "DEFAULT_DEPTH", "DEFAULT_PREC"]
