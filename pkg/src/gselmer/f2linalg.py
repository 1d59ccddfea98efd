"""Bit-packed F2 linear algebra: rank, nullspace, full affine solution sets.

Rows are Python ints used as bit vectors (bit j = column j).  Pivoting is
deterministic (first nonzero column, top-most row), so solution enumeration
order is stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class F2Matrix:
    rows: int
    cols: int
    bits: list[int]                      # one int per row
    labels: tuple | None = None          # optional row/column labels

    @classmethod
    def from_rows(cls, rows: list[list[int]], labels=None) -> "F2Matrix":
        n = len(rows)
        m = len(rows[0]) if rows else 0
        bits = []
        for row in rows:
            if len(row) != m:
                raise ValueError("ragged matrix")
            acc = 0
            for j, x in enumerate(row):
                if x & 1:
                    acc |= 1 << j
            bits.append(acc)
        return cls(n, m, bits, labels)

    def to_rows(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.bits]

    def mul_vec(self, x: int) -> int:
        out = 0
        for i, r in enumerate(self.bits):
            if bin(r & x).count("1") & 1:
                out |= 1 << i
        return out


def _echelon(m: F2Matrix, rhs: list[int]):
    """Row-reduce [m | rhs]; returns (pivot column list, rows, rhs)."""
    work = m.bits[:]
    r = rhs[:]
    pivots = []
    row = 0
    for col in range(m.cols):
        sel = None
        for i in range(row, m.rows):
            if (work[i] >> col) & 1:
                sel = i
                break
        if sel is None:
            continue
        work[row], work[sel] = work[sel], work[row]
        r[row], r[sel] = r[sel], r[row]
        for i in range(m.rows):
            if i != row and ((work[i] >> col) & 1):
                work[i] ^= work[row]
                r[i] ^= r[row]
        pivots.append(col)
        row += 1
        if row == m.rows:
            break
    return pivots, work, r


def rank(m: F2Matrix) -> int:
    pivots, _, _ = _echelon(m, [0] * m.rows)
    return len(pivots)


def nullspace(m: F2Matrix) -> list[int]:
    """Deterministic basis of the kernel, one bit vector per free column."""
    pivots, work, _ = _echelon(m, [0] * m.rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for i, col in enumerate(pivots):
            if (work[i] >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def solve_all(m: F2Matrix, y: int | list[int], max_solutions: int | None = None) -> list[int]:
    """Every x with m*x = y, as bit-vector ints in a deterministic order.

    Returns the empty list when the system is inconsistent.  A 0x0 system has
    exactly one solution, the empty vector.
    """
    if isinstance(y, list):
        if len(y) != m.rows:
            raise ValueError("rhs length does not match row count")
        acc = 0
        for i, b in enumerate(y):
            if b & 1:
                acc |= 1 << i
        y = acc
    if y >> m.rows:
        raise ValueError("rhs has more bits than the matrix has rows")
    pivots, work, r = _echelon(m, [(y >> i) & 1 for i in range(m.rows)])
    # consistency: zero rows must have zero rhs
    for i in range(len(pivots), m.rows):
        if work[i] == 0 and r[i]:
            return []
    particular = 0
    for i, col in enumerate(pivots):
        if r[i]:
            particular |= 1 << col
    basis = []
    pivot_set = set(pivots)
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for i, col in enumerate(pivots):
            if (work[i] >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    out = []
    total = 1 << len(basis)
    for mask in range(total):
        x = particular
        mm = mask
        idx = 0
        while mm:
            if mm & 1:
                x ^= basis[idx]
            mm >>= 1
            idx += 1
        out.append(x)
        if max_solutions is not None and len(out) >= max_solutions:
            break
    return out


def vec_to_bits(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> j) & 1 for j in range(n))
