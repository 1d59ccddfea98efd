"""The Gaussian quartic residue symbol, computed two independent ways.

For an odd primary prime p and any a not divisible by p, the symbol is the
fourth root of unity congruent to a^((Nm(p)-1)/4) mod p.  It extends to all
nonzero a by first stripping the p-part of a.  ``symbol_exp`` evaluates the
defining power; ``symbol_reciprocity`` uses the supplementary laws and the
main reciprocity law to recurse on smaller norms.  The two must agree
everywhere, which the test suite checks at scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .gaussian import (
    GaussianInt,
    ONE,
    UNITS,
    ZERO,
    divrem,
    factor,
    gmod,
    is_primary,
    is_prime,
    norm,
    split_t,
)


@dataclass(frozen=True)
class QuarticValue:
    """A fourth root of unity i^log, log in Z/4."""

    log: int

    def __post_init__(self):
        object.__setattr__(self, "log", self.log % 4)

    def value(self) -> GaussianInt:
        return UNITS[self.log]

    def __mul__(self, other: "QuarticValue") -> "QuarticValue":
        return QuarticValue(self.log + other.log)

    def __str__(self):
        return ("1", "i", "-1", "-i")[self.log]


def is_odd_primary_prime(p: GaussianInt) -> bool:
    """Prime of Z[i], odd, and congruent to 1 mod (1+i)^3."""
    if not is_primary(p):
        return False
    n = norm(p)
    if n == 1:
        return False
    if is_prime(n):
        return True
    # inert candidate: norm q^2 with q prime, q ≡ 3 (mod 4)
    if p.im != 0:
        return False
    q = abs(p.re)
    return q % 4 == 3 and is_prime(q)


def _check_prime(p: GaussianInt):
    if not is_odd_primary_prime(p):
        raise ValueError(f"{p} is not an odd primary prime")


def _powmod(a: GaussianInt, e: int, p: GaussianInt) -> GaussianInt:
    r = ONE
    a = gmod(a, p)
    while e:
        if e & 1:
            r = gmod(r * a, p)
        a = gmod(a * a, p)
        e >>= 1
    return r


def _strip(a: GaussianInt, p: GaussianInt) -> GaussianInt:
    if a == ZERO:
        raise ValueError("symbol of zero")
    while True:
        q, r = divrem(a, p)
        if r != ZERO:
            return a
        a = q


@lru_cache(maxsize=200_000)
def _symbol_exp_log(a: tuple[int, int], p: tuple[int, int]) -> int:
    av = GaussianInt(*a)
    pv = GaussianInt(*p)
    r = _powmod(av, (norm(pv) - 1) // 4, pv)
    for k in range(4):
        if gmod(r - UNITS[k], pv) == ZERO:
            return k
    raise AssertionError(f"power of {av} mod {pv} is not a root of unity")


def symbol_exp(a: GaussianInt, p: GaussianInt) -> QuarticValue:
    """Extended quartic symbol of a mod p by modular exponentiation."""
    _check_prime(p)
    a = gmod(_strip(a, p), p)
    return QuarticValue(_symbol_exp_log((a.re, a.im), (p.re, p.im)))


def mn_via_coordinates(p: GaussianInt) -> tuple[int, int]:
    """(m, n) mod 4 of a primary element p = x + yi from its coordinates.

    m ≡ (x - y - y^2 - 1)/4 and n ≡ (1 - x)/2, the logs of the symbols of
    1+i and i with denominator p.
    """
    if not is_primary(p):
        raise ValueError(f"{p} is not primary")
    x, y = p.re, p.im
    num = x - y - y * y - 1
    if num % 4:
        raise AssertionError(f"coordinate formula fails on primary {p}")
    return (num // 4) % 4, ((1 - x) // 2) % 4


@lru_cache(maxsize=200_000)
def _symbol_rec_log(a: tuple[int, int], p: tuple[int, int]) -> int:
    av = GaussianInt(*a)
    pv = GaussianInt(*p)
    m_p, n_p = mn_via_coordinates(pv)
    av = gmod(_strip(av, pv), pv)
    if av == ONE:
        return 0
    t, odd = split_t(av)
    f = factor(odd)
    log = (f.s * n_p + t * m_p) % 4
    for q, e in f.odd_part:
        if norm(q) >= norm(pv):
            # reduced numerators have norm <= norm(p)/2, so any prime factor
            # of them is strictly smaller; this guards the recursion.
            raise AssertionError("norm descent violated")
        n_q = mn_via_coordinates(q)[1]
        flip = 2 * n_p * n_q
        log = (log + e * (_symbol_rec_log((pv.re, pv.im), (q.re, q.im)) + flip)) % 4
    return log


def symbol_reciprocity(a: GaussianInt, p: GaussianInt) -> QuarticValue:
    """Extended quartic symbol via the reciprocity laws (norm-descent recursion)."""
    _check_prime(p)
    return QuarticValue(_symbol_rec_log((a.re, a.im), (p.re, p.im)))
