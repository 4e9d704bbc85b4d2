#!/usr/bin/env python3
"""Benchmark the compiled pair-scan kernels against the numpy fallback.

The O(n^2) ordered-pair sweeps dominate certification time on fine
grids, which is why they live in an extension module.  This script times
both backends on the same inputs and checks they agree.

Usage:
    python benchmarks/bench_kernels.py [--sizes 500,1000,2000] [--dim 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from demikit._kernels import backends


def time_call(fn, *args, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="500,1000,2000")
    parser.add_argument("--dim", type=int, default=3)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    impls = backends()
    if "compiled" not in impls:
        print("compiled backend unavailable; timing the numpy fallback only")

    cases = [
        ("pair_max_ne", lambda x, tx, fp: (x, tx)),
        ("pair_sup_spc_ratio", lambda x, tx, fp: (x, tx, 1e-9)),
        ("fix_max_dc", lambda x, tx, fp: (x, tx, fp, 0.4)),
    ]

    header = f"{'kernel':<20} {'n':>6} " + " ".join(
        f"{name + ' [s]':>14}" for name in impls)
    if len(impls) > 1:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))

    rng = np.random.default_rng(0)
    for n in sizes:
        x = rng.standard_normal((n, args.dim))
        tx = np.tanh(x) * 1.5
        fp = rng.standard_normal((4, args.dim))
        for kernel, make_args in cases:
            call_args = make_args(x, tx, fp)
            times = {}
            results = {}
            for name, impl in impls.items():
                fn = getattr(impl, kernel)
                times[name] = time_call(fn, *call_args, repeats=args.repeats)
                results[name] = fn(*call_args)
            values = list(results.values())
            assert all(v[0] == values[0][0] and v[1:] == values[0][1:]
                       for v in values), f"backend mismatch in {kernel}"
            row = f"{kernel:<20} {n:>6} " + " ".join(
                f"{times[name]:>14.4f}" for name in impls)
            if len(impls) > 1:
                row += f" {times['python'] / times['compiled']:>8.1f}x"
            print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
