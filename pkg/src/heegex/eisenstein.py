"""Fourier coefficients of the vector-valued Eisenstein series E_{k,L}.

For L of signature (2, r-2) and k = r/2 the coefficient of q^t e_gamma is

    c(gamma, t) = -(2 pi)^k t^(k-1) / (Gamma(k) sqrt|det L|) * prod_p delta_p(gamma, t)

with c(0, 0) = 1, where delta_p is the local density of Q(x + gamma) = t for the
positive-index form Q = -q_L. All but finitely many delta_p are given by an Euler
factor of a quadratic L-function, so the infinite product collapses to an exact
generalized Bernoulli number times the densities at the bad primes.
"""
from __future__ import annotations

import fcntl
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable

from . import arith, kernels
from .lattice import DiscriminantElement, Lattice
from .padic import local_density, vp

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HalfIntegerWeight:
    twice_k: int

    def __post_init__(self):
        if self.twice_k <= 0:
            raise ValueError("weight must be positive")

    @property
    def k(self) -> Fraction:
        return Fraction(self.twice_k, 2)


class WeightMismatch(ValueError):
    pass


def _check(L: Lattice, k: HalfIntegerWeight | None):
    if L.signature[0] != 2:
        raise ValueError(f"Eisenstein coefficients need signature (2, n), got {L.signature}")
    if k is not None and k.twice_k != L.rank:
        raise WeightMismatch(f"weight {k.k} does not match rank {L.rank} / 2")


def bad_primes(L: Lattice, t: Fraction) -> list[int]:
    t = Fraction(t)
    return arith.primes_dividing(2 * L.det * t.numerator * t.denominator)


def admissible(gamma: DiscriminantElement, t: Fraction) -> bool:
    return (Fraction(t) + gamma.q_exact()).denominator == 1


LocalFactor = Callable[[int], Fraction]


def eisenstein_coefficient(L: Lattice, k: HalfIntegerWeight | None, gamma: DiscriminantElement,
                           t, local: Callable[[Lattice, list, Fraction, int], Fraction] | None = None
                           ) -> Fraction:
    """Exact c(gamma, t) normalized by c(0, 0) = 1.

    ``local(L, gamma_lift, t, p)`` may replace the exact bad-prime densities (used by the
    brute-force cross-check).
    """
    _check(L, k)
    t = Fraction(t)
    if gamma.parent.lattice.gram != L.gram:
        raise ValueError("gamma is not an element of D(L)")
    if t < 0 or not admissible(gamma, t):
        raise ValueError(f"t = {t} is not in Z - q(gamma) with t >= 0")
    if t == 0:
        return Fraction(1) if gamma.is_zero() else Fraction(0)
    lift = list(gamma.lift())
    if local is None:
        local = _exact_local
    r = L.rank
    det_m = (-1) ** r * L.det          # det of the Gram matrix of L(-1)
    factors = {p: local(L, lift, t, p) for p in bad_primes(L, t)}
    if r % 2 == 0:
        return _even_rank(r // 2, det_m, t, factors)
    return _odd_rank((r - 1) // 2, det_m, t, factors)


def _exact_local(L: Lattice, lift, t: Fraction, p: int) -> Fraction:
    neg = tuple(tuple(-x for x in row) for row in L.gram)
    return local_density(neg, lift, t, p, blocks=L.blocks)


def _even_rank(k: int, det_m: int, t: Fraction, factors: dict[int, Fraction]) -> Fraction:
    disc = (-1) ** k * det_m
    d0 = arith.fundamental_discriminant(Fraction(disc))
    f = abs(d0)
    g = arith.rational_sqrt(Fraction(abs(disc), f))
    bk = abs(arith.generalized_bernoulli(k, d0))
    c = -2 * k * Fraction(f) ** (k - 1) * t ** (k - 1) / (bk * g)
    for p, dens in factors.items():
        c *= dens / (1 - arith.kronecker(d0, p) * Fraction(p) ** -k)
    return c


def _odd_rank(s: int, det_m: int, t: Fraction, factors: dict[int, Fraction]) -> Fraction:
    d0 = arith.fundamental_discriminant((-1) ** s * 2 * det_m * t)
    f = abs(d0)
    if s == 1 and f == 1:
        raise ValueError("weight 3/2 with trivial character: the series does not converge")
    root = arith.rational_sqrt(2 * t * f / abs(det_m))
    bs = abs(arith.generalized_bernoulli(s, d0))
    b2s = abs(arith.bernoulli_number(2 * s))
    c = -Fraction(4) ** s * bs * t ** (s - 1) / (Fraction(f) ** s * b2s) * root
    for p, dens in factors.items():
        psi = arith.kronecker(d0, p)
        c *= dens * (1 - psi * Fraction(p) ** -s) / (1 - Fraction(p) ** (-2 * s))
    return c


# ---------------------------------------------------------------- brute force oracle

BRUTE_GUARD_MODULUS = 10 ** 4
BRUTE_GUARD_RANK = 6


class GuardExceeded(ValueError):
    pass


def brute_force_local_density(L: Lattice, p: int, gamma: DiscriminantElement | list, t, nu: int) -> Fraction:
    """#{x in L/p^nu L : q(x + gamma) + t = 0 mod p^nu} / p^(nu (rk - 1)) by enumeration."""
    if L.rank > BRUTE_GUARD_RANK or p ** nu > BRUTE_GUARD_MODULUS:
        raise GuardExceeded(f"rank {L.rank}, modulus {p}^{nu} outside the enumeration guard")
    lift = list(gamma.lift()) if isinstance(gamma, DiscriminantElement) else [Fraction(x) for x in gamma]
    t = Fraction(t)
    M = p ** nu
    lin = L.gram_times(lift)
    if any(Fraction(x).denominator != 1 for x in lin):
        raise ValueError("gamma is not in the dual lattice")
    const = L.q(lift) + t
    if vp(const, p) < 0:
        return Fraction(0)
    c_int = const.numerator * pow(const.denominator, -1, M) % M
    count = kernels.count_zeros_mod([list(r) for r in L.gram], [int(x) for x in lin], c_int, M)
    return Fraction(count, M ** (L.rank - 1))


def brute_local(nu_for: Callable[[int], int]):
    """A ``local`` hook for eisenstein_coefficient backed by enumeration."""
    def local(L, lift, t, p):
        return brute_force_local_density(L, p, lift, t, nu_for(p))
    return local


# ---------------------------------------------------------------- cache


def default_cache_path() -> Path:
    env = os.environ.get("HEEGEX_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "heegex" / "eisenstein.jsonl"


def _frac(s: str) -> Fraction:
    return Fraction(s)


class EisensteinCache:
    """Append-only JSON-lines store of coefficients.

    Writers hold an exclusive flock while appending one complete line; readers skip any
    line that does not parse (a torn or corrupt record is recomputed).
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else default_cache_path()
        self._mem: dict[tuple, Fraction] = {}
        self._loaded_size = 0
        self.corrupt = 0
        self._load()

    def _load(self):
        try:
            with open(self.path, "rb") as fh:
                fh.seek(self._loaded_size)
                data = fh.read()
        except FileNotFoundError:
            return
        # only consume complete lines
        end = data.rfind(b"\n") + 1
        self._loaded_size += end
        for line in data[:end].splitlines():
            rec = self._parse(line)
            if rec is None:
                self.corrupt += 1
                continue
            key, val = rec
            self._mem[key] = val

    @staticmethod
    def _parse(line: bytes):
        try:
            obj = json.loads(line)
            key = (obj["lat"], int(obj["2k"]), tuple(int(x) for x in obj["gamma"]), _frac(obj["t"]))
            return key, _frac(obj["c"])
        except (ValueError, KeyError, TypeError, ZeroDivisionError):
            return None

    def get(self, lat: str, twice_k: int, gamma: tuple, t: Fraction) -> Fraction | None:
        return self._mem.get((lat, twice_k, tuple(gamma), Fraction(t)))

    def put(self, lat: str, twice_k: int, gamma: tuple, t: Fraction, c: Fraction):
        key = (lat, twice_k, tuple(gamma), Fraction(t))
        if key in self._mem:
            return
        self._mem[key] = c
        rec = {"lat": lat, "2k": twice_k, "gamma": list(gamma), "t": str(Fraction(t)), "c": str(c)}
        line = (json.dumps(rec, separators=(",", ":")) + "\n").encode()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "ab") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(line)
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def __len__(self):
        return len(self._mem)

    def records(self) -> Iterable[tuple[tuple, Fraction]]:
        return self._mem.items()

    def clear(self):
        self._mem.clear()
        self._loaded_size = 0
        if self.path.exists():
            self.path.unlink()

    def verify(self) -> dict:
        """Re-read the file and check every record for internal consistency."""
        ok = bad = 0
        problems = []
        try:
            raw = self.path.read_bytes()
        except FileNotFoundError:
            return {"records": 0, "corrupt": 0, "inconsistent": 0, "problems": []}
        for n, line in enumerate(raw.splitlines(), 1):
            rec = self._parse(line)
            if rec is None:
                bad += 1
                problems.append(f"line {n}: unparsable")
                continue
            (_, _, gamma, t), c = rec
            if t < 0 or (t == 0 and c != (0 if any(gamma) else 1)) or (t > 0 and c >= 0):
                problems.append(f"line {n}: coefficient {c} violates sign/normalization at t={t}")
            else:
                ok += 1
        return {"records": ok, "corrupt": bad, "inconsistent": len(problems) - bad, "problems": problems}


class Coefficients:
    """Coefficient oracle for one lattice, memoized in memory and optionally on disk."""

    def __init__(self, L: Lattice, cache: EisensteinCache | None = None):
        _check(L, None)
        self.L = L
        self.weight = HalfIntegerWeight(L.rank)
        self.cache = cache
        self.computed = 0

    def __call__(self, gamma: DiscriminantElement, t) -> Fraction:
        t = Fraction(t)
        key = (self.L.digest, self.weight.twice_k, gamma.residues, t)
        if self.cache is not None:
            hit = self.cache.get(*key)
            if hit is not None:
                return hit
        c = eisenstein_coefficient(self.L, self.weight, gamma, t)
        self.computed += 1
        if self.cache is not None:
            self.cache.put(*key, c)
        return c


@dataclass
class EisensteinTable:
    lattice_digest: str
    weight: HalfIntegerWeight
    entries: dict[tuple[tuple[int, ...], Fraction], Fraction] = field(default_factory=dict)

    def rows(self) -> list[tuple[tuple[int, ...], Fraction, Fraction]]:
        return sorted(((g, t, c) for (g, t), c in self.entries.items()), key=lambda r: (r[1], r[0]))

    def to_csv(self) -> str:
        lines = ["gamma,t,c"]
        for g, t, c in self.rows():
            lines.append(f"\"{','.join(map(str, g))}\",{t},{c}")
        return "\n".join(lines) + "\n"


def eisenstein_table(L: Lattice, k: HalfIntegerWeight | None, t_max, cache: EisensteinCache | None = None
                     ) -> EisensteinTable:
    _check(L, k)
    t_max = Fraction(t_max)
    coeff = Coefficients(L, cache)
    table = EisensteinTable(L.digest, coeff.weight)
    for gamma in L.discriminant_group:
        t = (-gamma.q_exact()) % 1
        while t <= t_max:
            table.entries[(gamma.residues, t)] = coeff(gamma, t)
            t += 1
    return table


def sigma_check_value(t: int, k: int) -> Fraction:
    """Classical level-one coefficient -2k/B_k * sigma_{k-1}(t)."""
    return -2 * k / arith.bernoulli_number(k) * arith.sigma(k - 1, t)


__all__ = [
    "HalfIntegerWeight", "EisensteinTable", "EisensteinCache", "Coefficients",
    "eisenstein_coefficient", "eisenstein_table", "brute_force_local_density",
    "default_cache_path",
]
