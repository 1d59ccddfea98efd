"""Arithmetic in (Z[i]/(1+i)^k)* and the two-generator coordinates of primary units.

Primary units modulo (1+i)^9 form a group isomorphic to (Z/8)^2, generated by
1-4i and -1-6i.  The exponents (m, n) of a primary element in terms of these
generators drive every reciprocity computation downstream.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .gaussian import GaussianInt, ONE, T, is_primary, norm

MIN_K = 3
MAX_K = 9

GEN_M = GaussianInt(1, -4)   # order 8 mod t^9
GEN_N = GaussianInt(-1, -6)  # order 8 mod t^9


def canonical_mod_tk(g: GaussianInt, k: int) -> GaussianInt:
    """Canonical representative of g mod (1+i)^k.

    The ideal ((1+i)^k) is the Z-lattice spanned by {2^(j+1), 2^j + 2^j i}
    for k = 2j+1 and by {2^j, 2^j i} for k = 2j; representatives live in the
    corresponding half-open box.
    """
    if k <= 0:
        return GaussianInt(0, 0)
    j, odd = divmod(k, 2)
    if not odd:
        m = 1 << j
        return GaussianInt(g.re % m, g.im % m)
    m_im = 1 << j
    m_re = 1 << (j + 1)
    im = g.im % m_im
    re = (g.re - (g.im - im)) % m_re
    return GaussianInt(re, im)


def congruent_mod_tk(a: GaussianInt, b: GaussianInt, k: int) -> bool:
    return canonical_mod_tk(a - b, k) == GaussianInt(0, 0)


@dataclass(frozen=True)
class TResidue:
    """Residue class modulo (1+i)^k, stored as the canonical representative."""

    k: int
    value: GaussianInt

    def __mul__(self, other: "TResidue") -> "TResidue":
        if self.k != other.k:
            raise ValueError("modulus mismatch")
        return TResidue(self.k, canonical_mod_tk(self.value * other.value, self.k))

    def __pow__(self, e: int) -> "TResidue":
        r = TResidue(self.k, canonical_mod_tk(ONE, self.k))
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r


def reduce(g: GaussianInt, k: int) -> TResidue:
    """Residue of g mod (1+i)^k for 3 <= k <= 9."""
    if not MIN_K <= k <= MAX_K:
        raise ValueError(f"modulus exponent {k} outside {MIN_K}..{MAX_K}")
    return TResidue(k, canonical_mod_tk(g, k))


@dataclass(frozen=True)
class MNExponents:
    """Exponents (m, n) in Z/8 with g ≡ (1-4i)^m * (-1-6i)^n mod (1+i)^9."""

    m: int
    n: int

    def mod4(self) -> tuple[int, int]:
        return self.m % 4, self.n % 4

    def mod2(self) -> tuple[int, int]:
        return self.m % 2, self.n % 2


_MN_TABLE: dict[tuple[int, int], tuple[int, int]] | None = None
_MN_LOCK = threading.Lock()


def _mn_table() -> dict[tuple[int, int], tuple[int, int]]:
    global _MN_TABLE
    if _MN_TABLE is None:
        with _MN_LOCK:
            if _MN_TABLE is None:
                table = {}
                gm = ONE
                for m in range(8):
                    gn = gm
                    for n in range(8):
                        rep = canonical_mod_tk(gn, 9)
                        table[(rep.re, rep.im)] = (m, n)
                        gn = canonical_mod_tk(gn * GEN_N, 9)
                    gm = canonical_mod_tk(gm * GEN_M, 9)
                if len(table) != 64:
                    raise AssertionError("generators fail to span 64 classes")
                _MN_TABLE = table
    return _MN_TABLE


def mn_exponents(g: GaussianInt) -> MNExponents:
    """Unique (m, n) in (Z/8)^2 with g ≡ (1-4i)^m (-1-6i)^n mod (1+i)^9."""
    if not is_primary(g):
        raise ValueError(f"{g} is not primary")
    rep = canonical_mod_tk(g, 9)
    m, n = _mn_table()[(rep.re, rep.im)]
    return MNExponents(m, n)


def additive_coeffs(g: GaussianInt) -> tuple[int, int, int, int]:
    """Digits (a3, a4, a5, a6) of the binary (1+i)-adic expansion mod (1+i)^7.

    g ≡ 1 + a3*t^3 + a4*t^4 + a5*t^5 + a6*t^6 with each digit in {0, 1}.
    """
    if not is_primary(g):
        raise ValueError(f"{g} is not primary")
    h = canonical_mod_tk(g - ONE, 7)
    digits = []
    tk = T**3
    for _ in range(3, 7):
        # digit = 1 iff h / t^j is odd
        q = h
        for _ in range(len(digits) + 3):
            q = GaussianInt((q.re + q.im) // 2, (q.im - q.re) // 2)
        bit = (q.re + q.im) % 2 if q != GaussianInt(0, 0) else 0
        digits.append(bit)
        if bit:
            h = canonical_mod_tk(h - tk, 7)
        tk = tk * T
    return tuple(digits)


def enumerate_odd_units(k: int) -> list[TResidue]:
    """All 2^(k-1) odd residue classes mod (1+i)^k, each exactly once."""
    if not MIN_K <= k <= MAX_K:
        raise ValueError(f"modulus exponent {k} outside {MIN_K}..{MAX_K}")
    return [TResidue(k, v) for v in _odd_unit_reps(k)]


def _odd_unit_reps(k: int) -> list[GaussianInt]:
    j, odd = divmod(k, 2)
    out = []
    if not odd:
        m = 1 << j
        box = ((x, y) for x in range(m) for y in range(m))
    else:
        m_re = 1 << (j + 1)
        m_im = 1 << j
        box = ((x, y) for x in range(m_re) for y in range(m_im))
    for x, y in box:
        if (x + y) % 2:
            out.append(GaussianInt(x, y))
    return out
