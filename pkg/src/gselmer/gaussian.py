"""Exact Gaussian-integer arithmetic and factorization into primary primes.

Conventions used throughout the package:

* ``t`` denotes the ramified prime 1+i, so 2 = -i*t^2 and 4 = -t^4.
* an element is *odd* if it is not divisible by 1+i;
* an odd element is *primary* if it is congruent to 1 modulo (1+i)^3.
  Every odd element has exactly one primary associate among g, ig, -g, -ig.
"""

from __future__ import annotations

import re as _regex
from dataclasses import dataclass
from functools import lru_cache


class GaussianInt:
    """Immutable Gaussian integer with arbitrary-precision components."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianInt is immutable")

    def __eq__(self, other):
        if isinstance(other, int):
            return self.re == other and self.im == 0
        if isinstance(other, GaussianInt):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __add__(self, other):
        other = _coerce(other)
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        r = ONE
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self):
        return format_gaussian(self)


def _coerce(x) -> GaussianInt:
    if isinstance(x, GaussianInt):
        return x
    if isinstance(x, int):
        return GaussianInt(x, 0)
    raise TypeError(f"cannot coerce {x!r} to GaussianInt")


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I_UNIT = GaussianInt(0, 1)
T = GaussianInt(1, 1)

UNITS = (ONE, I_UNIT, GaussianInt(-1, 0), GaussianInt(0, -1))  # i^0..i^3


def norm(g: GaussianInt) -> int:
    """re^2 + im^2; zero iff g = 0, multiplicative."""
    return g.re * g.re + g.im * g.im


def format_gaussian(g: GaussianInt) -> str:
    """Canonical text form: ``a``, ``bi``, ``a+bi`` or ``a-bi``."""
    re_, im_ = g.re, g.im
    if im_ == 0:
        return str(re_)
    if im_ == 1:
        istr = "i"
    elif im_ == -1:
        istr = "-i"
    else:
        istr = f"{im_}i"
    if re_ == 0:
        return istr
    if im_ > 0:
        return f"{re_}+{istr}"
    return f"{re_}{istr}"


_GAUSS_RE = _regex.compile(
    r"^\s*(?P<re>[+-]?\d+)?\s*(?P<im>[+-]?(?:\d+)?i)?\s*$"
)


def parse_gaussian(s: str) -> GaussianInt:
    """Parse the canonical text form, e.g. ``-7+12i``, ``i``, ``3``."""
    m = _GAUSS_RE.match(s.replace(" ", ""))
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"cannot parse Gaussian integer: {s!r}")
    re_ = int(m.group("re")) if m.group("re") is not None else 0
    imtok = m.group("im")
    if imtok is None:
        im_ = 0
    else:
        body = imtok[:-1]
        if body in ("", "+"):
            im_ = 1
        elif body == "-":
            im_ = -1
        else:
            im_ = int(body)
    return GaussianInt(re_, im_)


def divrem(a: GaussianInt, b: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
    """Euclidean division: a = q*b + r with norm(r) <= norm(b)/2.

    Each coordinate of a/b is rounded to the nearest integer, ties toward
    -infinity, so quotients (and hence gcds) are deterministic.
    """
    n = norm(b)
    if n == 0:
        raise ZeroDivisionError("division by zero Gaussian integer")
    w = a * b.conjugate()

    def nearest(x: int) -> int:
        q, r = divmod(x, n)
        return q + 1 if 2 * r > n else q

    q = GaussianInt(nearest(w.re), nearest(w.im))
    return q, a - q * b


def divexact(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    q, r = divrem(a, b)
    if r != ZERO:
        raise ValueError(f"{a} not divisible by {b}")
    return q


def gmod(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    return divrem(a, b)[1]


def gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    while b != ZERO:
        a, b = b, gmod(a, b)
    return a


def t_valuation(g: GaussianInt) -> int:
    """Largest k with (1+i)^k dividing g; g must be nonzero."""
    return split_t(g)[0]


def split_t(g: GaussianInt) -> tuple[int, GaussianInt]:
    """(v, g0) with g = t^v * g0 and g0 odd."""
    if g == ZERO:
        raise ValueError("t-valuation of zero")
    v = 0
    re_, im_ = g.re, g.im
    while (re_ + im_) % 2 == 0:
        # g / (1+i) = (g * (1-i)) / 2
        re_, im_ = (re_ + im_) // 2, (im_ - re_) // 2
        v += 1
    return v, GaussianInt(re_, im_)


def is_odd(g: GaussianInt) -> bool:
    return (g.re + g.im) % 2 != 0


def is_primary(g: GaussianInt) -> bool:
    """g ≡ 1 (mod (1+i)^3).  Implies g odd."""
    d = g - ONE
    if d == ZERO:
        return True
    return norm(d) % 8 == 0


def primary_associate(g: GaussianInt) -> tuple[GaussianInt, int]:
    """(p, s) with p primary and g = i^s * p.  g must be odd and nonzero."""
    if g == ZERO or not is_odd(g):
        raise ValueError(f"{g} has no primary associate (zero or even)")
    for s in range(4):
        p = UNITS[(4 - s) % 4] * g  # i^{-s} g
        if is_primary(p):
            return p, s
    raise AssertionError("unreachable: one associate of an odd value is primary")


# ---------------------------------------------------------------------------
# rational integer factoring helpers

_SMALL_PRIMES = []


def _sieve(limit: int) -> list[int]:
    global _SMALL_PRIMES
    if _SMALL_PRIMES and _SMALL_PRIMES[-1] >= limit:
        return _SMALL_PRIMES
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
    _SMALL_PRIMES = [i for i, f in enumerate(flags) if f]
    return _SMALL_PRIMES


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent, deterministic restarts)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = _int_gcd(abs(x - y), n)
        if d != n:
            return d
    raise ValueError(f"failed to factor {n}")


def _int_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 (trial division, then Pollard rho)."""
    out: dict[int, int] = {}
    for p in _sieve(100_000):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def sqrt_minus_one(p: int) -> int:
    """A square root of -1 modulo a prime p ≡ 1 (mod 4)."""
    for a in range(2, p):
        x = pow(a, (p - 1) // 4, p)
        if x * x % p == p - 1:
            return x
    raise ValueError(f"{p} is not 1 mod 4")


# ---------------------------------------------------------------------------
# primary factorization

@dataclass(frozen=True)
class PrimaryFactorization:
    """g = i^s * (1+i)^t * prod(prime^exp) with every prime primary.

    Primes are pairwise non-associate and sorted by (norm, re, im).
    """

    s: int
    t: int
    odd_part: tuple[tuple[GaussianInt, int], ...]

    def value(self) -> GaussianInt:
        g = UNITS[self.s % 4] * T**self.t
        for p, e in self.odd_part:
            g = g * p**e
        return g

    def norm(self) -> int:
        n = 1 << self.t
        for p, e in self.odd_part:
            n *= norm(p) ** e
        return n

    def primes(self) -> tuple[GaussianInt, ...]:
        return tuple(p for p, _ in self.odd_part)

    def __str__(self):
        parts = []
        if self.s:
            parts.append("i" if self.s == 1 else f"i^{self.s}")
        if self.t:
            parts.append("(1+i)" if self.t == 1 else f"(1+i)^{self.t}")
        for p, e in self.odd_part:
            base = f"({format_gaussian(p)})"
            parts.append(base if e == 1 else f"{base}^{e}")
        return " * ".join(parts) if parts else "1"


def _prime_sort_key(p: GaussianInt):
    return (norm(p), p.re, p.im)


def factor(g: GaussianInt) -> PrimaryFactorization:
    """Factor nonzero g into i^s * t^t * product of primary primes."""
    if g == ZERO:
        raise ValueError("cannot factor zero")
    t, g0 = split_t(g)
    n = norm(g0)
    odd: list[tuple[GaussianInt, int]] = []
    for p, e in sorted(factor_int(n).items()):
        if p % 4 == 3:
            # inert: -p is the primary associate, exponent e/2
            if e % 2:
                raise AssertionError(f"odd exponent for inert prime {p}")
            prime = GaussianInt(-p, 0)
            odd.append((prime, e // 2))
            g0 = divexact(g0, prime ** (e // 2))
        else:
            x = sqrt_minus_one(p)
            pi = primary_associate(gcd(GaussianInt(p, 0), GaussianInt(x, 1)))[0]
            for prime in (pi, primary_associate(pi.conjugate())[0]):
                k = 0
                while True:
                    q, r = divrem(g0, prime)
                    if r != ZERO:
                        break
                    g0 = q
                    k += 1
                if k:
                    odd.append((prime, k))
    for s, u in enumerate(UNITS):
        if g0 == u:
            odd.sort(key=lambda pe: _prime_sort_key(pe[0]))
            return PrimaryFactorization(s, t, tuple(odd))
    raise AssertionError(f"leftover non-unit {g0} while factoring {g}")


def is_fourth_power_free(f: PrimaryFactorization) -> bool:
    """True iff s, t in 0..3 and every odd exponent is 1, 2 or 3."""
    if not (0 <= f.s <= 3 and 0 <= f.t <= 3):
        return False
    return all(1 <= e <= 3 for _, e in f.odd_part)


def reduce_fourth_power_free(f: PrimaryFactorization) -> PrimaryFactorization:
    """Canonical fourth-power-free representative of f's class in K*/(K*)^4."""
    odd = tuple((p, e % 4) for p, e in f.odd_part if e % 4 != 0)
    return PrimaryFactorization(f.s % 4, f.t % 4, odd)
