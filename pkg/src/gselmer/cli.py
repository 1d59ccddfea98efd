"""Command-line front end.

Subcommands: factor, symbol, graph, selmer, survey, verify.
Exit codes: 0 success, 1 verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .f2linalg import vec_to_bits
from .gaussian import (
    GaussianInt,
    PrimaryFactorization,
    factor,
    is_fourth_power_free,
    norm,
    parse_gaussian,
    reduce_fourth_power_free,
)
from .graph import build_graph, graph_to_dot, graph_to_json
from .oracle import (
    LocalPlace,
    all_divisor_classes,
    cd_point_search,
    lsc_at_odd_place_direct,
    lsc_away_direct,
    lsc_away_graph,
    selmer_group_bruteforce,
)
from .quartic import symbol_exp, symbol_reciprocity
from .selmer import candidate_systems, compute_selmer_group, lsc_at_t
from .survey import enumerate_b, enumerate_first, render_csv, survey


def _parse_b(text: str) -> PrimaryFactorization:
    g = parse_gaussian(text)
    f = factor(g)
    if not is_fourth_power_free(f):
        f = reduce_fourth_power_free(f)
        print(f"# input is not fourth-power-free; using class representative {f}")
    return f


def cmd_factor(args) -> int:
    f = factor(parse_gaussian(args.value))
    print(f"{args.value} = {f}")
    print(f"s = {f.s}, t = {f.t}, norm = {f.norm()}")
    for p, e in f.odd_part:
        print(f"  prime {p}  exponent {e}  norm {norm(p)}")
    return 0


def cmd_symbol(args) -> int:
    a = parse_gaussian(args.a)
    p = parse_gaussian(args.p)
    val = symbol_exp(a, p)
    check = symbol_reciprocity(a, p)
    if val.log != check.log:
        print(f"INTERNAL MISMATCH: exponentiation {val} vs reciprocity {check}")
        return 1
    print(f"symbol({args.a} / {args.p}) = {val}   (log_i = {val.log})")
    return 0


def cmd_graph(args) -> int:
    f = _parse_b(args.b)
    g = build_graph(f)
    if args.format == "json":
        print(graph_to_json(g))
    else:
        print(graph_to_dot(g))
    return 0


def _selmer_json(b, group) -> str:
    g = build_graph(b)
    payload = {
        "b": str(b.value()),
        "s_b": b.s,
        "t_b": b.t,
        "primes": [
            {"value": str(v), "kind": k, "m": mn[0], "n": mn[1]}
            for v, k, mn in zip(g.vertices, g.kinds, g.mn)
        ],
        "matrix": group.matrix.to_rows(),
        "elements": [
            {"s": d.s, "t": d.t, "odd": [str(p) for p in d.odd]}
            for d in group
        ],
        "size": len(group),
    }
    return json.dumps(payload, indent=2)


def cmd_selmer(args) -> int:
    f = _parse_b(args.b)
    if args.dual:
        dual_val = GaussianInt(-4, 0) * f.value()
        f = reduce_fourth_power_free(factor(dual_val))
        print(f"# dual descent: running on -4*b, class representative {f}")
    group = compute_selmer_group(f)
    if args.json:
        print(_selmer_json(f, group))
        return 0
    g, matrix, retained, systems = candidate_systems(f)
    print(f"b = {f}   (s_b = {f.s}, t_b = {f.t}, norm = {f.norm()})")
    print(f"odd primes: {[str(v) for v in g.vertices]}")
    print(f"retained vertices: {[str(g.vertices[i]) for i in retained]}")
    print("modified Laplacian over F2:")
    for row in matrix.to_rows():
        print(f"  {row}")
    for (s_d, t_d), y, sols in systems:
        print(f"system (s_d, t_d) = ({s_d}, {t_d}), y = {list(y)}:")
        if not sols:
            print("  no solutions")
        for bits, d, ok, fired in sols:
            verdict = f"passes ({fired})" if ok else "fails at 1+i"
            print(f"  x = {list(bits)}  d = {d}  {verdict}")
    print(f"S^(phi) has {len(group)} elements:")
    for d in group:
        print(f"  {d}")
    return 0


def cmd_survey(args) -> int:
    if args.max_norm:
        curves = enumerate_b(args.max_norm, population=args.population)
    else:
        curves = enumerate_first(args.count, population=args.population)
    rows, csv_text = survey(curves, bin_size=args.bins, jobs=args.jobs)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv_text)
        print(f"wrote {len(rows)} rows for {len(curves)} curves to {args.out}")
    else:
        sys.stdout.write(csv_text)
    return 0


def cmd_verify(args) -> int:
    failures = 0
    checked = 0
    curves = enumerate_b(args.max_norm)
    for b in curves:
        pipeline = compute_selmer_group(b)
        brute = selmer_group_bruteforce(b)
        if pipeline.elements != brute.elements:
            failures += 1
            print(f"MISMATCH pipeline vs bruteforce at b = {b}")
            print(f"  pipeline : {sorted(str(d) for d in pipeline.elements)}")
            print(f"  bruteforce: {sorted(str(d) for d in brute.elements)}")
        g = build_graph(b)
        for d in all_divisor_classes(b):
            checked += 1
            if lsc_away_direct(b, d) != lsc_away_graph(b, d, g):
                failures += 1
                print(f"MISMATCH direct vs graph LSC at b = {b}, d = {d}")
    print(f"verify: {len(curves)} curves, {checked} divisor classes checked")
    if args.hensel:
        failures += _verify_hensel(args.samples, args.seed)
    if failures:
        print(f"verify: {failures} failures")
        return 1
    print("verify: all checks passed")
    return 0


def _verify_hensel(samples: int, seed: int) -> int:
    """Random (b, d, place) triples: point search vs symbol/residue verdict."""
    rng = random.Random(seed)
    pool = enumerate_b(600)
    failures = 0
    done = 0
    while done < samples:
        b = rng.choice(pool)
        if not b.odd_part and rng.random() < 0.5:
            continue  # keep a healthy share of curves with odd primes
        ds = all_divisor_classes(b)
        d = rng.choice(ds)
        primes = b.primes()
        if primes and rng.random() < 0.7:
            i = rng.randrange(len(primes))
            place = LocalPlace("odd", primes[i])
            expected = lsc_at_odd_place_direct(b, d, primes[i], b.odd_part[i][1])
        else:
            place = LocalPlace("t")
            expected = lsc_at_t(b, d)[0]
        got = cd_point_search(b, d, place)
        if got != expected:
            failures += 1
            where = str(place.prime) if place.kind == "odd" else "1+i"
            print(f"HENSEL MISMATCH b = {b}, d = {d}, place = {where}: "
                  f"search {got}, symbols {expected}")
        done += 1
    print(f"hensel cross-check: {done} samples, {failures} mismatches")
    return failures


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gselmer",
        description="phi-Selmer groups of y^2 = x^3 + b*x over Q(i)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factor a Gaussian integer into primary primes")
    p.add_argument("value")
    p.set_defaults(fn=cmd_factor)

    p = sub.add_parser("symbol", help="quartic residue symbol [a/p]")
    p.add_argument("a")
    p.add_argument("p")
    p.set_defaults(fn=cmd_symbol)

    p = sub.add_parser("graph", help="weighted prime graph of b")
    p.add_argument("b")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("selmer", help="compute the phi-Selmer group of E_b")
    p.add_argument("b")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dual", action="store_true",
                   help="descend via the dual isogeny (run on -4b)")
    p.set_defaults(fn=cmd_selmer)

    p = sub.add_parser("survey", help="size distribution over enumerated curves")
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--max-norm", type=int, default=0,
                   help="enumerate by norm bound instead of curve count")
    p.add_argument("--bins", type=int, default=500)
    p.add_argument("--out", default="")
    p.add_argument("--population", choices=("all", "odd-part-only"), default="all")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_survey)

    p = sub.add_parser("verify", help="oracle equivalence and Hensel cross-checks")
    p.add_argument("--max-norm", type=int, default=500)
    p.add_argument("--hensel", action="store_true")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
