"""The weighted directed graph on the odd primary primes dividing b.

Vertices are the odd primes of b, tagged with their exponent class
(1 or 3: "p-type"; 2: "q-type").  The edge weight from v to w is the
Z/4-log of the quartic symbol of w with denominator v; loops are zero.
Degree sums are kept as plain integer sums of the canonical Z/4 weights so
that the halved quantities needed downstream are computed exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .gaussian import GaussianInt, PrimaryFactorization, is_fourth_power_free
from .quartic import mn_via_coordinates, symbol_exp

P_KINDS = frozenset({1, 3})
Q_KINDS = frozenset({2})
ALL_KINDS = frozenset({1, 2, 3})


@dataclass(frozen=True)
class SelmerGraph:
    vertices: tuple[GaussianInt, ...]
    kinds: tuple[int, ...]          # exponent class in {1, 2, 3}, aligned with vertices
    weights: tuple[tuple[int, ...], ...]  # Z/4 canonical values, zero diagonal
    s_b: int
    t_b: int
    mn: tuple[tuple[int, int], ...]  # (m, n) mod 4 per vertex

    def __len__(self):
        return len(self.vertices)

    def vertex_index(self, v) -> int:
        if isinstance(v, int):
            if not 0 <= v < len(self.vertices):
                raise ValueError(f"vertex index {v} out of range")
            return v
        try:
            return self.vertices.index(v)
        except ValueError:
            raise ValueError(f"{v} is not a vertex") from None


def build_graph(f: PrimaryFactorization) -> SelmerGraph:
    """Graph of a nonzero fourth-power-free factorization."""
    if not is_fourth_power_free(f):
        raise ValueError("b must be fourth-power-free")
    verts = tuple(p for p, _ in f.odd_part)
    kinds = tuple(e for _, e in f.odd_part)
    n = len(verts)
    weights = tuple(
        tuple(
            0 if a == c else symbol_exp(verts[c], verts[a]).log
            for c in range(n)
        )
        for a in range(n)
    )
    mn = tuple(mn_via_coordinates(p) for p in verts)
    return SelmerGraph(verts, kinds, weights, f.s % 4, f.t, mn)


def degree(g: SelmerGraph, v, kind_filter: Iterable[int] = ALL_KINDS) -> int:
    """Sum of edge weights from v to vertices whose kind is in the filter, in Z/4."""
    return degree_raw(g, v, kind_filter) % 4


def degree_raw(g: SelmerGraph, v, kind_filter: Iterable[int] = ALL_KINDS) -> int:
    """Same sum, as the exact integer over canonical weight representatives."""
    i = g.vertex_index(v)
    ks = frozenset(kind_filter)
    return sum(
        w for j, w in enumerate(g.weights[i]) if j != i and g.kinds[j] in ks
    )


def degree_subset(g: SelmerGraph, v, indices: Iterable[int],
                  kind_filter: Iterable[int] = ALL_KINDS) -> int:
    """Degree of v restricted to an explicit vertex subset, in Z/4."""
    i = g.vertex_index(v)
    ks = frozenset(kind_filter)
    return sum(
        g.weights[i][j] for j in indices if j != i and g.kinds[j] in ks
    ) % 4


def laplacian_z4(g: SelmerGraph) -> list[list[int]]:
    """diag(total degrees) - adjacency, over Z/4; every row sums to 0."""
    n = len(g)
    lap = []
    for i in range(n):
        row = [(-g.weights[i][j]) % 4 for j in range(n)]
        row[i] = degree(g, i)
        lap.append(row)
    return lap


def graph_to_json(g: SelmerGraph) -> str:
    payload = {
        "s_b": g.s_b,
        "t_b": g.t_b,
        "vertices": [
            {"value": str(v), "kind": k, "m": mn[0], "n": mn[1]}
            for v, k, mn in zip(g.vertices, g.kinds, g.mn)
        ],
        "weights": [list(row) for row in g.weights],
    }
    return json.dumps(payload, indent=2)


def graph_to_dot(g: SelmerGraph) -> str:
    lines = ["digraph Gb {"]
    for v, k in zip(g.vertices, g.kinds):
        shape = "ellipse" if k in P_KINDS else "box"
        lines.append(f'  "{v}" [shape={shape}];')
    for i in range(len(g)):
        for j in range(len(g)):
            if i != j and g.weights[i][j]:
                lines.append(
                    f'  "{g.vertices[i]}" -> "{g.vertices[j]}" '
                    f'[label="{g.weights[i][j]}"];'
                )
    lines.append("}")
    return "\n".join(lines)
