"""Curve enumeration by norm and the distribution survey.

Curves y^2 = x^3 + b x over Q(i) are indexed by fourth-power-free classes
b in K*/(K*)^4.  The canonical representative is i^s (1+i)^t u with
s, t in 0..3 and u a product of primary primes with exponents in 1..3.
Enumeration is fully deterministic: classes sort by
(norm, s, t, prime sequence).
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from multiprocessing import Pool

from .gaussian import (
    GaussianInt,
    PrimaryFactorization,
    _sieve,
    norm,
    primary_associate,
    sqrt_minus_one,
    gcd,
)
from .selmer import compute_selmer_group

SIZE_COLUMNS = (1, 2, 4, 8, 16)


def primary_primes_up_to(max_norm: int) -> list[GaussianInt]:
    """All primary primes of norm <= max_norm, sorted by (norm, re, im)."""
    out = []
    for p in _sieve(max_norm):
        if p == 2:
            continue
        if p % 4 == 3:
            if p * p <= max_norm:
                out.append(GaussianInt(-p, 0))
        elif p <= max_norm:
            x = sqrt_minus_one(p)
            pi = primary_associate(gcd(GaussianInt(p, 0), GaussianInt(x, 1)))[0]
            out.append(pi)
            out.append(primary_associate(pi.conjugate())[0])
    out.sort(key=lambda g: (norm(g), g.re, g.im))
    return out


def _odd_parts(max_norm: int) -> list[tuple[int, tuple[tuple[GaussianInt, int], ...]]]:
    """(norm, odd_part) for every fourth-power-free product of primary primes."""
    primes = primary_primes_up_to(max_norm)
    norms = [norm(p) for p in primes]
    out = [(1, ())]

    def extend(start: int, acc_norm: int, acc: tuple):
        for i in range(start, len(primes)):
            pn = norms[i]
            if acc_norm * pn > max_norm:
                # primes are sorted by norm; everything later is at least as big
                break
            n = acc_norm
            for e in (1, 2, 3):
                n *= pn
                if n > max_norm:
                    break
                part = acc + ((primes[i], e),)
                out.append((n, part))
                extend(i + 1, n, part)

    extend(0, 1, ())
    return out


def enumerate_b(max_norm: int, max_count: int | None = None,
                population: str = "all") -> list[PrimaryFactorization]:
    """Canonical fourth-power-free b with Nm(b) <= max_norm, in canonical order.

    population "all" takes every class i^s (1+i)^t u; "odd-part-only"
    restricts to s = t = 0 (odd primary b).
    """
    if max_norm < 1:
        return []
    if population not in ("all", "odd-part-only"):
        raise ValueError(f"unknown population {population!r}")
    items = []
    s_range = range(4) if population == "all" else range(1)
    t_range = range(4) if population == "all" else range(1)
    for n_odd, part in _odd_parts(max_norm):
        for t in t_range:
            n = n_odd << t
            if n > max_norm:
                break
            key_part = tuple((norm(p), p.re, p.im, e) for p, e in part)
            for s in s_range:
                items.append(((n, s, t, key_part), PrimaryFactorization(s, t, part)))
    items.sort(key=lambda kv: kv[0])
    bs = [b for _, b in items]
    if max_count is not None:
        bs = bs[:max_count]
    return bs


def enumerate_first(count: int, population: str = "all") -> list[PrimaryFactorization]:
    """The first `count` curves in the canonical order, growing the norm bound."""
    max_norm = max(4, count)
    while True:
        bs = enumerate_b(max_norm, population=population)
        if len(bs) >= count:
            return bs[:count]
        max_norm *= 2


@dataclass(frozen=True)
class SurveyRow:
    bin_end: int
    counts: dict[int, int]

    def percentages(self) -> dict[int, float]:
        return {k: v / self.bin_end for k, v in self.counts.items()}


def _selmer_size(b: PrimaryFactorization) -> int:
    return len(compute_selmer_group(b))


def survey_sizes(curves: list[PrimaryFactorization], jobs: int = 1) -> list[int]:
    """Selmer-group size per curve, preserving enumeration order."""
    if jobs <= 1:
        return [_selmer_size(b) for b in curves]
    with Pool(jobs) as pool:
        return list(pool.map(_selmer_size, curves, chunksize=64))


def survey(curves: list[PrimaryFactorization], bin_size: int = 500,
           jobs: int = 1) -> tuple[list[SurveyRow], str]:
    """Cumulative size distribution every bin_size curves; returns (rows, csv)."""
    if bin_size < 1:
        raise ValueError("bin_size must be >= 1")
    sizes = survey_sizes(curves, jobs=jobs)
    rows = []
    running: dict[int, int] = {}
    for i, size in enumerate(sizes, start=1):
        running[size] = running.get(size, 0) + 1
        if i % bin_size == 0 or i == len(sizes):
            rows.append(SurveyRow(i, dict(running)))
    return rows, render_csv(rows)


def render_csv(rows: list[SurveyRow]) -> str:
    buf = io.StringIO()
    buf.write("bin_end,n,pct_1,pct_2,pct_4,pct_8,pct_16,pct_other\n")
    for row in rows:
        total = row.bin_end
        known = sum(row.counts.get(k, 0) for k in SIZE_COLUMNS)
        other = (total - known) / total
        pcts = [row.counts.get(k, 0) / total for k in SIZE_COLUMNS]
        cells = ",".join(f"{p:.5f}" for p in pcts + [other])
        buf.write(f"{row.bin_end},{total},{cells}\n")
    return buf.getvalue()
