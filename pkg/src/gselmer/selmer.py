"""The main pipeline: modified Laplacian, four affine systems, 2-adic filter.

A square-free divisor class of 2b is encoded as (s, t, odd) with s, t in
{0, 1} and odd a subset of the odd primes of b.  Such a class lies in the
phi-Selmer group iff its indicator vector solves L'_b x = y^(s,t) over F2
(local solubility away from 1+i) and it passes one of the residue conditions
(A), (B), (C) at 1+i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .f2linalg import F2Matrix, rank as f2_rank, solve_all, vec_to_bits
from .gaussian import (
    GaussianInt,
    ONE,
    PrimaryFactorization,
    T,
    UNITS,
    is_fourth_power_free,
    norm,
    split_t,
)
from .graph import (
    P_KINDS,
    Q_KINDS,
    SelmerGraph,
    build_graph,
    degree_raw,
    laplacian_z4,
)
from .residue_units import canonical_mod_tk, congruent_mod_tk, _odd_unit_reps


@dataclass(frozen=True)
class DivisorClass:
    """Square-free divisor i^s * (1+i)^t * prod(odd) of 2b, modulo squares."""

    s: int
    t: int
    odd: tuple[GaussianInt, ...]

    def __post_init__(self):
        object.__setattr__(self, "s", self.s % 2)
        object.__setattr__(self, "t", self.t % 2)
        object.__setattr__(
            self, "odd", tuple(sorted(set(self.odd), key=lambda p: (norm(p), p.re, p.im)))
        )

    def value(self) -> GaussianInt:
        g = UNITS[self.s] * T**self.t
        for p in self.odd:
            g = g * p
        return g

    def __mul__(self, other: "DivisorClass") -> "DivisorClass":
        """Product modulo squares: i^2, t^2 and repeated primes are squares."""
        sym = set(self.odd) ^ set(other.odd)
        return DivisorClass(self.s ^ other.s, self.t ^ other.t, tuple(sym))

    def __str__(self):
        parts = []
        if self.s:
            parts.append("i")
        if self.t:
            parts.append("(1+i)")
        parts.extend(f"({p})" for p in self.odd)
        return "*".join(parts) if parts else "1"


UNIT_DIVISOR = DivisorClass(0, 0, ())


@dataclass(frozen=True)
class SelmerGroup:
    elements: frozenset[DivisorClass]
    b: PrimaryFactorization
    retained: tuple[int, ...]
    matrix: F2Matrix

    def __len__(self):
        return len(self.elements)

    def __contains__(self, d: DivisorClass):
        return d in self.elements

    def __iter__(self):
        return iter(sorted(self.elements, key=lambda d: (d.s, d.t, [str(p) for p in d.odd])))


def build_modified_laplacian(g: SelmerGraph) -> tuple[F2Matrix, tuple[int, ...]]:
    """(L'_b, retained vertex indices).

    Starting from the Z/4 Laplacian reduced mod 2: delete the row and column
    of every q-vertex whose deg^(1,3) parity disagrees with m t_b + n s_b;
    add 1 to the diagonal of every p-vertex whose deg^(2) parity disagrees
    with m t_b + n s_b; add 1 to the diagonal of every retained q-vertex with
    deg^(1) + 3 deg^(3) ≡ m t_b + n s_b + 2(n + 1) (mod 4).
    """
    lap = laplacian_z4(g)
    retained = []
    for i in range(len(g)):
        m_v, n_v = g.mn[i]
        if g.kinds[i] == 2:
            if (degree_raw(g, i, P_KINDS) - (m_v * g.t_b + n_v * g.s_b)) % 2 != 0:
                continue
        retained.append(i)
    rows = []
    for i in retained:
        m_v, n_v = g.mn[i]
        row = [lap[i][j] % 2 for j in retained]
        pos = retained.index(i)
        if g.kinds[i] in P_KINDS:
            if (degree_raw(g, i, Q_KINDS) - (m_v * g.t_b + n_v * g.s_b)) % 2 != 0:
                row[pos] ^= 1
        else:
            lhs = degree_raw(g, i, {1}) + 3 * degree_raw(g, i, {3})
            rhs = m_v * g.t_b + n_v * g.s_b + 2 * (n_v + 1)
            if (lhs - rhs) % 4 == 0:
                row[pos] ^= 1
        rows.append(row)
    labels = tuple(g.vertices[i] for i in retained)
    if rows:
        matrix = F2Matrix.from_rows(rows, labels=labels)
    else:
        matrix = F2Matrix(0, 0, [], labels=labels)
    return matrix, tuple(retained)


def target_vector(g: SelmerGraph, retained: tuple[int, ...], s_d: int, t_d: int) -> list[int]:
    """Per retained vertex: m_v * t_d + n_v * s_d mod 2."""
    if s_d not in (0, 1) or t_d not in (0, 1):
        raise ValueError("s_d, t_d must be 0 or 1")
    return [(g.mn[i][0] * t_d + g.mn[i][1] * s_d) % 2 for i in retained]


# ---------------------------------------------------------------------------
# local solubility at 1+i

_SIGNS = (ONE, GaussianInt(-1, 0))

# squares of the 64 odd unit classes mod t^7; only alpha^2 enters condition (C)
_UNIT_SQUARES_T7 = tuple(
    sorted(
        {
            (r.re, r.im)
            for u in _odd_unit_reps(7)
            for r in (canonical_mod_tk(u * u, 7),)
        }
    )
)


def lsc_at_t(b: PrimaryFactorization, d: DivisorClass) -> tuple[bool, str | None]:
    """Local solubility at 1+i; returns (verdict, which of "A"/"B"/"C" fired).

    With b = t^t_b b0 and d = t^t_d d0:
    (A) t_b ≡ t_d (mod 2) and b0 ≡ d0(±1 - d0 t^(4k+t_b)) mod t^5, k in 0..2.
    (B) t_d = 0 and b t^(4k) ≡ d0(±1 - d0) mod t^5, k in 0..2.
    (C) t_b = 2 t_d and b0 ≡ -d0(d0 - a0^2 t^(2k-t_d)) mod t^7 for some odd
        unit a0 and k in 1..5.  The exponent is 2k - t_d: the variant with
        +t_d misses genuine points whose w-coordinate has valuation t_d + 1.
    """
    known = set(b.primes())
    for p in d.odd:
        if p not in known:
            raise ValueError(f"{p} does not divide b")
    t_b = b.t
    b0 = canonical_mod_tk(UNITS[b.s % 4], 7)
    for p, e in b.odd_part:
        for _ in range(e):
            b0 = canonical_mod_tk(b0 * p, 7)
    t_d = d.t
    d0 = canonical_mod_tk(UNITS[d.s], 7)
    for p in d.odd:
        d0 = canonical_mod_tk(d0 * p, 7)
    if (t_b - t_d) % 2 == 0:
        for k in range(3):
            tk = canonical_mod_tk(T ** (4 * k + t_b), 5)
            for sign in _SIGNS:
                rhs = d0 * (sign - d0 * tk)
                if congruent_mod_tk(b0, rhs, 5):
                    return True, "A"
    if t_d == 0:
        for k in range(3):
            lhs = b0 * T ** (4 * k + t_b)
            for sign in _SIGNS:
                rhs = d0 * (sign - d0)
                if congruent_mod_tk(lhs, rhs, 5):
                    return True, "B"
    if t_b == 2 * t_d:
        for k in range(1, 6):
            tk = canonical_mod_tk(T ** (2 * k - t_d), 7)
            for a2 in _UNIT_SQUARES_T7:
                rhs = -(d0 * (d0 - GaussianInt(*a2) * tk))
                if congruent_mod_tk(b0, rhs, 7):
                    return True, "C"
    return False, None


# ---------------------------------------------------------------------------
# the full pipeline

def compute_selmer_group(b: PrimaryFactorization) -> SelmerGroup:
    """All square-free divisor classes of 2b that are everywhere locally soluble."""
    if not is_fourth_power_free(b):
        raise ValueError("b must be fourth-power-free")
    g = build_graph(b)
    matrix, retained = build_modified_laplacian(g)
    elements = set()
    for s_d in (0, 1):
        for t_d in (0, 1):
            y = target_vector(g, retained, s_d, t_d)
            for x in solve_all(matrix, y):
                odd = tuple(
                    g.vertices[retained[j]]
                    for j in range(len(retained))
                    if (x >> j) & 1
                )
                d = DivisorClass(s_d, t_d, odd)
                ok, _ = lsc_at_t(b, d)
                if ok:
                    elements.add(d)
    return SelmerGroup(frozenset(elements), b, retained, matrix)


def candidate_systems(b: PrimaryFactorization):
    """The four (s_d, t_d) systems with their solution divisors and 1+i verdicts.

    Diagnostic view of compute_selmer_group, used by the CLI.
    """
    g = build_graph(b)
    matrix, retained = build_modified_laplacian(g)
    out = []
    for s_d in (0, 1):
        for t_d in (0, 1):
            y = target_vector(g, retained, s_d, t_d)
            sols = []
            for x in solve_all(matrix, y):
                odd = tuple(
                    g.vertices[retained[j]]
                    for j in range(len(retained))
                    if (x >> j) & 1
                )
                d = DivisorClass(s_d, t_d, odd)
                ok, fired = lsc_at_t(b, d)
                sols.append((vec_to_bits(x, matrix.cols), d, ok, fired))
            out.append(((s_d, t_d), tuple(y), sols))
    return g, matrix, retained, out


def selmer_size_square_b(b: PrimaryFactorization) -> int:
    """#S for b = (-1)^s1 t^(2 t1) q_1^2 ... q_N^2 with every q ≡ 1 mod t^7.

    Equals 2^(N - r + 1) where r is the F2-rank of the plain Laplacian.
    """
    if b.s % 2 or b.t % 2:
        raise ValueError("b is not a square: unit or t exponent is odd")
    if any(e != 2 for _, e in b.odd_part):
        raise ValueError("b is not of the required square shape")
    for q, _ in b.odd_part:
        if not congruent_mod_tk(q, ONE, 7):
            raise ValueError(f"{q} is not 1 mod (1+i)^7")
    g = build_graph(b)
    lap = laplacian_z4(g)
    n = len(g)
    m = F2Matrix.from_rows([[x % 2 for x in row] for row in lap]) if n else F2Matrix(0, 0, [])
    r = f2_rank(m)
    return 1 << (n - r + 1)
