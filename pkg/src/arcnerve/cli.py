"""Command-line interface: ``arcnerve <verb> ...``."""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from typing import Optional

from . import kernels
from .circle import Arc, ArcCollection, as_fraction, balls
from .homology import set_caps

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_EMPTY = 3
EXIT_PRECONDITION = 4


class InputError(Exception):
    def __init__(self, message: str, code: int = EXIT_PARSE):
        super().__init__(message)
        self.code = code


def _rational(value, where: str) -> Fraction:
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if not isinstance(value, str):
        raise InputError(f"{where}: expected a rational string, got {value!r}")
    try:
        return as_fraction(value)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def parse_document(doc, complex_override: Optional[str] = None, radius_override: Optional[str] = None) -> tuple:
    """Turn an input document into ``(ArcCollection, variant)``.

    Point inputs become balls: radius r for the Cech complex, r/2 with the
    clique variant for the Vietoris-Rips complex.
    """
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    if "arcs" in doc:
        items = doc["arcs"]
        if not isinstance(items, list):
            raise InputError("'arcs' must be a list")
        if not items:
            raise InputError("empty arc collection", EXIT_EMPTY)
        arcs = []
        for i, a in enumerate(items):
            if not isinstance(a, dict) or "start" not in a:
                raise InputError(f"arcs[{i}]: expected an object with 'start'")
            start = _rational(a["start"], f"arcs[{i}].start")
            if "length" in a:
                length = _rational(a["length"], f"arcs[{i}].length")
                if length < 0:
                    raise InputError(f"arcs[{i}].length: negative length")
                arcs.append(Arc(start, length))
            elif "end" in a:
                arcs.append(Arc.from_endpoints(start, _rational(a["end"], f"arcs[{i}].end")))
            else:
                raise InputError(f"arcs[{i}]: needs 'length' or 'end'")
        variant = complex_override or doc.get("complex", "nerve")
        if variant not in ("nerve", "clique"):
            raise InputError(f"arc inputs take --complex nerve|clique, got {variant!r}")
        return ArcCollection(arcs), variant
    if "points" in doc:
        pts = doc["points"]
        if not isinstance(pts, list):
            raise InputError("'points' must be a list")
        if not pts:
            raise InputError("empty point set", EXIT_EMPTY)
        points = [_rational(p, f"points[{i}]") for i, p in enumerate(pts)]
        r_raw = radius_override if radius_override is not None else doc.get("radius")
        if r_raw is None:
            raise InputError("point inputs need a radius")
        r = _rational(r_raw, "radius")
        if r < 0:
            raise InputError("radius: must be nonnegative")
        kind = complex_override or doc.get("complex", "cech")
        if kind == "cech":
            return balls(points, r), "nerve"
        if kind == "vr":
            return balls(points, r / 2), "clique"
        raise InputError(f"point inputs take --complex cech|vr, got {kind!r}")
    raise InputError("input document needs 'arcs' or 'points'")


def _load(path: Optional[str]):
    try:
        text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _report(coll: ArcCollection, variant: str, args, with_log: bool) -> dict:
    from .homotopy import collection_homotopy
    from .reduce import verify_reduction

    h, res = collection_homotopy(coll, variant, backend=args.backend)
    out = {
        "n": len(coll),
        "variant": variant,
        "reduced": {"n": res.n_prime, "k": res.k_prime, "kept": res.kept_indices},
        "homotopy": h.to_dict(),
        "homotopy_text": str(h),
    }
    if with_log:
        out["removals"] = [{"removed": i, "by": j, "case": c} for i, j, c in res.removal_log]
    if getattr(args, "verify", False):
        out["verified"] = verify_reduction(coll, res)
    return out


def cmd_homotopy(args) -> int:
    coll, variant = parse_document(_load(args.input), args.complex, args.radius)
    out = _report(coll, variant, args, args.log_removals)
    _emit(out)
    return EXIT_MISMATCH if out.get("verified") is False else EXIT_OK


def cmd_reduce(args) -> int:
    coll, variant = parse_document(_load(args.input), args.complex, args.radius)
    args.verify = True
    out = _report(coll, variant, args, True)
    _emit(out)
    return EXIT_OK if out["verified"] else EXIT_MISMATCH


def format_table(n_max: int, k_max: Optional[int] = None, variant: str = "nerve") -> str:
    from .homotopy import clique_homotopy, nerve_homotopy

    fn = nerve_homotopy if variant == "nerve" else clique_homotopy
    k_max = n_max - 2 if k_max is None else k_max
    lines = ["n/k\t" + "\t".join(str(k) for k in range(k_max + 1))]
    for n in range(2, n_max + 1):
        lines.append(f"{n}\t" + "\t".join(str(fn(n, k)) for k in range(k_max + 1)))
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    if args.n_max < 2:
        raise InputError("--n-max must be at least 2", EXIT_PRECONDITION)
    variant = args.complex or "nerve"
    if variant not in ("nerve", "clique"):
        raise InputError("table takes --complex nerve|clique", EXIT_PRECONDITION)
    sys.stdout.write(format_table(args.n_max, args.k_max, variant))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import first_failure, run_all

    results = run_all(
        n_max=args.n_max,
        clique=not args.no_clique,
        random_count=args.random,
        seed=args.seed,
        inject_fault=args.inject_fault,
    )
    for r in results:
        print(r.summary())
    bad = first_failure(results)
    if bad:
        print(f"counterexample: {bad}")
        return EXIT_MISMATCH
    return EXIT_OK


def bench_once(count: int, seed: int, backend: Optional[str]) -> dict:
    from .reduce import reduce_scaled
    from .sampling import random_scaled

    starts, lengths, denom = random_scaled(count, seed)
    timings: dict = {}
    t0 = time.perf_counter()
    res = reduce_scaled(starts, lengths, denom, backend=backend, timings=timings)
    total = time.perf_counter() - t0
    return {
        "count": count,
        "backend": kernels.get(backend).BACKEND,
        "sort_seconds": timings.get("sort", 0.0),
        "reduce_seconds": timings.get("reduce", 0.0),
        "total_seconds": total,
        "mutations": res.mutations,
        "mutations_per_arc": res.mutations / count,
        "n_prime": res.n_prime,
        "k_prime": res.k_prime,
    }


def _best_post_sort(si, kern, min_total: float) -> float:
    from .reduce import _post_sort

    best = math.inf
    spent = 0.0
    while spent < min_total or best is math.inf:
        t0 = time.perf_counter()
        _post_sort(si, kern)
        dt = time.perf_counter() - t0
        best = min(best, dt)
        spent += dt
    return best


def bench_ladder(lo: int, hi: int, seed: int, backend: Optional[str], repeats: int = 10) -> list:
    """Timings for sizes 2^lo .. 2^hi.

    Each size is sorted once; the post-sort phase is then timed in
    ``repeats`` round-robin passes over all sizes and the best time kept, so
    slow spells on a shared machine do not land on a single size.
    """
    from .reduce import _sorted_from_scaled
    from .sampling import random_scaled

    kern = kernels.get(backend)
    sizes = list(range(lo, hi + 1))
    rows = [bench_once(1 << e, seed, backend) for e in sizes]
    inputs = []
    for e in sizes:
        starts, lengths, denom = random_scaled(1 << e, seed)
        inputs.append(_sorted_from_scaled(starts % denom, lengths, denom))
    best = [math.inf] * len(sizes)
    for _ in range(repeats):
        for t, si in enumerate(inputs):
            best[t] = min(best[t], _best_post_sort(si, kern, 0.05))
    for row, b in zip(rows, best):
        row["reduce_seconds"] = b
    for prev, cur in zip(rows, rows[1:]):
        cur["reduce_growth"] = cur["reduce_seconds"] / prev["reduce_seconds"] if prev["reduce_seconds"] else None
    return rows


def cmd_bench(args) -> int:
    if args.count < 1:
        raise InputError("--count must be positive", EXIT_PRECONDITION)
    out = {"single": bench_once(args.count, args.seed, args.backend)}
    if args.ladder:
        lo, hi = (int(x) for x in args.ladder.split(":"))
        out["ladder"] = bench_ladder(lo, hi, args.seed, args.backend)
    _emit(out)
    return EXIT_OK


def cmd_generators(args) -> int:
    from .homology import is_boundary, is_cocycle, pair, reduced_homology
    from .complex import nerve_nk
    from .polytope import (
        PreconditionError,
        alpha_cycle,
        beta_cochain_even,
        delta_boundary,
        evaluation_matrix,
        even_parameter,
        raw_evaluation_pattern,
    )

    n, k = args.n, args.k
    if even_parameter(n, k) is None:
        raise PreconditionError(f"generators need k/n = l/(l+1) with n - k >= 2, got ({n}, {k})")
    l = even_parameter(n, k)
    cx = nerve_nk(n, k)
    beta = beta_cochain_even(n, k)
    total = alpha_cycle(n, k, 0)
    for i in range(1, n - k):
        total = total + alpha_cycle(n, k, i)
    out = {
        "n": n,
        "k": k,
        "l": l,
        "beta_support": [list(s) for s in beta.support()],
        "beta_is_cocycle": is_cocycle(cx, beta),
        "pairing_beta_delta": pair(beta, delta_boundary(n, k)),
        "raw_pattern": raw_evaluation_pattern(n, k),
        "evaluation_matrix": evaluation_matrix(n, k),
        "alpha_sum_is_boundary": is_boundary(cx, total),
        "rank": reduced_homology(cx).betti(2 * l),
    }
    ok = out["beta_is_cocycle"] and out["pairing_beta_delta"] == -1 and out["alpha_sum_is_boundary"] and out["rank"] == n - k - 1
    if args.json:
        _emit(dict(out, ok=ok))
    else:
        print(f"N({n},{k}), l={l}: beta cocycle={out['beta_is_cocycle']}, <beta, dDelta>={out['pairing_beta_delta']}")
        print(f"<beta_0, alpha_i> = {out['raw_pattern']}")
        print("evaluation matrix:")
        for row in out["evaluation_matrix"]:
            print("  " + " ".join(f"{x:2d}" for x in row))
        print(f"sum of alphas is a boundary: {out['alpha_sum_is_boundary']}; rank = {out['rank']}")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_polytope(args) -> int:
    from .complex import nerve_nk
    from .polytope import PreconditionError, gale_evenness_facets, gale_facets, odd_parameter

    fs = gale_facets(args.two_m, args.n)
    out = {
        "n": args.n,
        "dim": args.two_m,
        "facets": [list(f) for f in fs],
        "gale_evenness_agrees": list(fs.facets) == gale_evenness_facets(args.two_m, args.n),
    }
    ok = out["gale_evenness_agrees"]
    if args.check_inclusion is not None:
        k = args.check_inclusion
        if not 0 <= k < args.n:
            raise PreconditionError(f"need 0 <= k < n, got k={k}")
        nk = nerve_nk(args.n, k)
        missing = [list(f) for f in fs if f not in nk]
        l = odd_parameter(args.n, k)
        out["inclusion"] = {"k": k, "holds": not missing, "missing": missing, "inclusion_expected": l is not None and 2 * l + 2 == args.two_m}
        if out["inclusion"]["inclusion_expected"]:
            ok = ok and not missing
    if args.json:
        _emit(dict(out, ok=ok))
    else:
        print(f"boundary of C_{args.two_m}({args.n}): {len(fs)} facets")
        for f in fs:
            print("  " + " ".join(map(str, f)))
        print(f"Gale evenness brute force agrees: {out['gale_evenness_agrees']}")
        if "inclusion" in out:
            inc = out["inclusion"]
            print(f"inclusion into N({args.n},{inc['k']}): {'holds' if inc['holds'] else 'fails'}")
            for f in inc["missing"]:
                print("  missing: " + " ".join(map(str, f)))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_chromatic(args) -> int:
    from .graphs import lovasz_report

    rep = lovasz_report(args.n, args.d)
    if args.json:
        _emit(rep.to_dict())
    else:
        print(f"K_{{{args.n}/{args.d}}}: chi={rep.chi}, bound={rep.bound}, gap={rep.gap}, n/(2d) mod 1 = {rep.fractional_case}")
    return EXIT_OK


def _parse_caps(text: str) -> tuple:
    try:
        v, d = text.split(":")
        return int(v), int(d)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--caps expects V:D, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arcnerve", description="Homotopy types of nerve and clique complexes of circular arcs.")
    p.add_argument("--caps", type=_parse_caps, help="homology oracle caps as VERTICES:DIM")
    p.add_argument("--backend", choices=["compiled", "python"], help="reduction kernel backend")
    # the same flags are accepted after the verb; SUPPRESS keeps them from clobbering the global ones
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--caps", type=_parse_caps, default=argparse.SUPPRESS)
    common.add_argument("--backend", choices=["compiled", "python"], default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="verb", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    def add_input(sp):
        sp.add_argument("--input", "-i", default="-", help="input JSON document (default: stdin)")
        sp.add_argument("--complex", choices=["nerve", "clique", "cech", "vr"])
        sp.add_argument("--radius", help="ball radius for point inputs, e.g. 1/5")

    sp = sub.add_parser("homotopy", help="classify the nerve or clique complex of an input")
    add_input(sp)
    sp.add_argument("--log-removals", action="store_true", help="include the removal log")
    sp.add_argument("--verify", action="store_true", help="replay and check the reduction")
    sp.set_defaults(func=cmd_homotopy)

    sp = sub.add_parser("reduce", help="reduce an input and print the full removal log")
    add_input(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("table", help="tabulate homotopy types of N(n, k)")
    sp.add_argument("--n-max", type=int, default=18)
    sp.add_argument("--k-max", type=int, default=None)
    sp.add_argument("--complex", choices=["nerve", "clique"])
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("verify", help="run the formula-versus-oracle suites")
    sp.add_argument("--n-max", type=int, default=8)
    sp.add_argument("--random", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--no-clique", action="store_true")
    sp.add_argument("--inject-fault", action="store_true", help="break one formula branch to test the harness")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="time the sort and reduction phases")
    sp.add_argument("--count", type=int, default=1_000_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--ladder", help="size ladder LO:HI of powers of two, e.g. 15:20")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("generators", help="explicit generators for k/n = l/(l+1)")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_generators)

    sp = sub.add_parser("polytope", help="facets of the boundary of C_{2m}(n)")
    sp.add_argument("n", type=int)
    sp.add_argument("two_m", type=int)
    sp.add_argument("--check-inclusion", type=int, metavar="K")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_polytope)

    sp = sub.add_parser("chromatic", help="Lovasz bound report for K_{n/d}")
    sp.add_argument("n", type=int)
    sp.add_argument("d", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_chromatic)
    return p


def main(argv=None) -> int:
    from .polytope import PreconditionError

    args = build_parser().parse_args(argv)
    if args.caps:
        set_caps(*args.caps)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except AssertionError as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
