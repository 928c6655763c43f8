"""Compare the compiled and pure-Python predicate kernels.

    python benchmarks/bench_kernels.py [--games 200] [--sizes 3 4 5 6]

For each player count the same random games are classified (all sixteen
predicates) under each available backend, and the results are checked to
agree before any timing is reported.
"""

from __future__ import annotations

import argparse
import random
import time

from youngshap import classify, finest_partition
from youngshap.generators import random_game, random_strictly_convex
from youngshap.kernels import available_backends, using_backend


def workload(games):
    out = []
    for g in games:
        out.append((classify(g), finest_partition(g)))
    return out


def bench(games, backend: str, repeat: int):
    best = float("inf")
    result = None
    for _ in range(repeat):
        for g in games:
            g._fast = None  # drop cached int64 tables so each run pays the same conversion
        with using_backend(backend):
            t = time.perf_counter()
            result = workload(games)
            best = min(best, time.perf_counter() - t)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--games", type=int, default=200)
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5, 6, 7, 8])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'n':>3} {'games':>6} " + " ".join(f"{b + ' (s)':>13}" for b in backends) + "   speedup")
    rng = random.Random(args.seed)
    for n in args.sizes:
        # half generic games, half strictly convex ones (predicates run to completion on the latter)
        games = [random_game(n, rng) if j % 2 else random_strictly_convex(n, rng) for j in range(args.games)]
        timings = {}
        results = {}
        for b in backends:
            timings[b], results[b] = bench(games, b, args.repeat)
        first = results[backends[0]]
        assert all(r == first for r in results.values()), "backends disagree"
        speed = (f"{timings['python'] / timings['cython']:8.1f}x" if "cython" in timings else "       -")
        print(f"{n:>3} {len(games):>6} " + " ".join(f"{timings[b]:13.4f}" for b in backends) + "  " + speed)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
