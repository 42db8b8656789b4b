"""Benchmark the compiled kernels against the pure-numpy fallback.

Runs the Monte-Carlo scan (pair_max), the per-point evaluator
(pair_values), and the sphere ascent through both backends and prints a
throughput table.  The fallback is loaded directly from
``qwrange._kernels_py``; the compiled path goes through
``qwrange.backend`` (run with QWRANGE_PURE_PYTHON unset).

Usage: python benchmarks/bench_backends.py [--samples N] [--dims 2,3,6]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qwrange import _kernels_py
from qwrange import backend
from qwrange.core import gen_random, rng_stream


def _time(fn, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_dim(n: int, q: float, samples: int):
    T = gen_random("ginibre", n, seed=n)
    width = backend.row_width(n)
    u = rng_stream(1234, 0xBE).random((samples, width))

    rows = [f"dim {n}, q {q}, {samples} samples"]
    for label, mod in (("compiled", backend), ("python", _kernels_py)):
        if label == "compiled" and backend.BACKEND != "compiled":
            rows.append("  compiled backend not built; skipping")
            continue
        t_scan, (v1, i1) = _time(lambda m=mod: m.pair_max(T, q, u))
        t_vals, vals = _time(lambda m=mod: m.pair_values(T, q, u))
        x0 = np.ones(n, dtype=complex) / np.sqrt(n)
        t_asc, (x, g, it) = _time(
            lambda m=mod: m.ascent(T, q, x0, 300, 1e-12))
        rows.append(
            f"  {label:8s}  scan {samples / t_scan / 1e6:7.2f} Msamp/s"
            f"   values {samples / t_vals / 1e6:7.2f} Msamp/s"
            f"   ascent {it / t_asc:9.0f} iter/s   (max {v1:.6f})"
        )
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--dims", default="2,3,6")
    ap.add_argument("--q", type=float, default=0.6)
    args = ap.parse_args()

    print(f"active backend: {backend.BACKEND}")
    for n in (int(d) for d in args.dims.split(",")):
        for line in bench_dim(n, args.q, args.samples):
            print(line)


if __name__ == "__main__":
    main()
