"""Compare the compiled and pure-Python reduction kernels on the same inputs.

    python3 benchmarks/bench_backends.py --sizes 10000 100000 --seed 0
"""
import argparse
import time

import numpy as np

from arcnerve import kernels
from arcnerve.reduce import _post_sort, _sorted_from_scaled
from arcnerve.sampling import random_scaled


def best_time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10_000, 100_000])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    backends = kernels.available()
    print(f"backends: {', '.join(backends)}")
    print(f"{'arcs':>10} {'sort s':>9} " + " ".join(f"{b + ' s':>12}" for b in backends) + "   speedup")
    for size in args.sizes:
        starts, lengths, denom = random_scaled(size, args.seed)
        t0 = time.perf_counter()
        si = _sorted_from_scaled(starts % denom, lengths, denom)
        sort_s = time.perf_counter() - t0
        times = {}
        results = {}
        for b in backends:
            kern = kernels.get(b)
            results[b] = _post_sort(si, kern)
            times[b] = best_time(lambda: _post_sort(si, kern), args.repeats)
        first = results[backends[0]]
        for b in backends[1:]:
            other = results[b]
            same = (
                np.array_equal(first.kept, other.kept)
                and first.k_prime == other.k_prime
                and first.mutations == other.mutations
            )
            if not same:
                raise SystemExit(f"backends disagree at size {size}")
        speedup = ""
        if "compiled" in times and "python" in times:
            speedup = f"{times['python'] / times['compiled']:9.1f}x"
        print(f"{size:>10} {sort_s:>9.4f} " + " ".join(f"{times[b]:>12.4f}" for b in backends) + "   " + speedup)


if __name__ == "__main__":
    main()
