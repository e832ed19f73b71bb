#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the batch delta evaluation and full search runs on generated instances
and reports the speedup.  Run from the repo root:

    python3 benchmarks/backend_compare.py [--sizes 20,40,60] [--iters 100]
"""

import argparse
import time

import numpy as np

from qapsolve import _purekernels as pure
from qapsolve.instance import random_instance
from qapsolve.rng import SplitMix64
from qapsolve.core import random_permutation
from qapsolve.tabu import sample_tenure, tenure_bounds

try:
    from qapsolve import _kernels as compiled
except ImportError:
    compiled = None


def time_call(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="20,40,60")
    parser.add_argument("--iters", type=int, default=100)
    args = parser.parse_args()

    if compiled is None:
        print("compiled backend not built; showing pure-Python timings only")
    backends = [("python", pure)] + ([("c", compiled)] if compiled else [])

    print(f"{'kernel':<14} {'n':>4} " + " ".join(f"{name:>12}" for name, _ in backends) + "  speedup")
    for n in (int(s) for s in args.sizes.split(",")):
        rng = SplitMix64(2024)
        inst = random_instance(n, rng)
        perm = random_permutation(n, rng)
        interval = tenure_bounds(n)
        tenures = np.array(
            [sample_tenure(interval, rng) for _ in range(args.iters)], dtype=np.int64
        )
        rows = [
            ("all_deltas", lambda b: b.all_deltas(inst.flow, inst.distance, perm), 20),
            ("two_opt_run", lambda b: b.two_opt_run(inst.flow, inst.distance, perm, args.iters), 1),
            ("tabu_run", lambda b: b.tabu_run(inst.flow, inst.distance, perm, args.iters, tenures), 1),
        ]
        for label, call, reps in rows:
            times = [time_call(call, b, repeat=reps and 3) for _, b in backends]
            speedup = f"{times[0] / times[-1]:8.1f}x" if len(times) > 1 else ""
            print(
                f"{label:<14} {n:>4} "
                + " ".join(f"{t * 1e3:>10.3f}ms" for t in times)
                + f"  {speedup}"
            )


if __name__ == "__main__":
    main()
