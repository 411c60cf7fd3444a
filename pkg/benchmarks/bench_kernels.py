#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy/python fallback.

Run with no arguments to compare both backends (the script re-executes
itself once per backend via LEVIBRANCH_NUMBA); pass --single to time only
the backend active in the current process.

The workloads mirror the hot paths: full-group orbit expansion, dominant
normal forms over large row blocks, batched partition-function evaluation,
and end-to-end M-function builds on the rank-6 symplectic system.
"""

import json
import os
import subprocess
import sys
import time

import numpy as np


def _timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_single():
    import levibranch as lb
    from levibranch import kernels as K
    from levibranch.branching import build_m
    from levibranch.rootsys import Weight
    from levibranch.weightpoly import levi_table

    sp12 = lb.build_root_system("C", 6)
    levi = lb.build_levi(sp12, [1, 2, 4, 5, 6])
    group = lb.weyl_group(sp12)
    perm, sign, eps = group.arrays
    vec = np.array(Weight.of(9, 7, 5, 4, 2, 1), dtype=np.int64)

    rng = np.random.default_rng(12345)
    big_rows = (rng.integers(-12, 13, size=(400_000, 6)) * 2).astype(np.int64)

    table = levi_table(levi)
    lam = Weight.of(3, 2, 1, 1, 0, 0)
    mu = Weight.of(1, 0, 0, 1, 0, 0)
    shifted = np.array(lam + sp12.rho, dtype=np.int64)
    args = K.orbit_images(perm, sign, shifted) - np.array(mu + sp12.rho, np.int64)

    results = {}
    # warm the jit before timing
    K.orbit_images(perm, sign, vec)
    K.dominant_rows(big_rows[:8], 1)
    results["orbit_images |W|=46080"] = _timeit(
        lambda: K.orbit_images(perm, sign, vec))
    results["dominant_rows 400k x 6"] = _timeit(
        lambda: K.dominant_rows(big_rows, 1))
    results["kostant_batch 46080 args"] = _timeit(
        lambda: table.count_rows(args), repeat=1)
    mus = [Weight.of(7 - i, 3, 1 - i, 5, 3, 1) for i in range(4)]
    build_m(levi, mus[0])  # warm caches
    results["build_m sp12>gl3+sp6 x4"] = _timeit(
        lambda: [build_m(levi, m) for m in mus], repeat=1)
    return results


def main():
    if "--single" in sys.argv:
        from levibranch import kernels

        print(json.dumps({"backend": kernels.BACKEND, "results": run_single()}))
        return
    rows = {}
    for flag, label in (("1", "numba"), ("0", "numpy")):
        env = dict(os.environ, LEVIBRANCH_NUMBA=flag)
        out = subprocess.run(
            [sys.executable, __file__, "--single"],
            env=env, capture_output=True, text=True, check=True)
        payload = json.loads(out.stdout.strip().splitlines()[-1])
        rows[payload["backend"]] = payload["results"]
    names = sorted(next(iter(rows.values())))
    width = max(len(n) for n in names) + 2
    print(f"{'kernel':<{width}} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    for name in names:
        tn = rows.get("numba", {}).get(name)
        tp = rows.get("numpy", {}).get(name)
        ratio = (tp / tn) if tn and tp else float("nan")
        tn_s = f"{tn * 1e3:9.2f} ms" if tn is not None else "n/a"
        tp_s = f"{tp * 1e3:9.2f} ms" if tp is not None else "n/a"
        print(f"{name:<{width}} {tn_s:>12} {tp_s:>12} {ratio:>8.1f}x")


if __name__ == "__main__":
    main()
