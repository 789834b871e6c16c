#!/usr/bin/env python3
"""Compare the compiled BFS core against the pure-Python fallback.

Run from the repo root:

    python3 benchmarks/bench_kernels.py

Workloads mirror the hot paths: full-graph BFS sweeps (power graphs,
distance profiles) and arena-masked BFS (the splitter-game engine).
"""

import random
import time

import numpy as np

from splitterlab import _speedups_py
from splitterlab.graph import Graph

try:
    from splitterlab import _speedups
except ImportError:
    _speedups = None


def random_graph(rng, n, p):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def bench_all_pairs(impl, g, repeats):
    indptr, indices = g._csr
    out = np.empty((g.n, g.n), dtype=np.int32)
    best = float("inf")
    for _ in range(repeats):
        out.fill(-1)
        t0 = time.perf_counter()
        impl.all_pairs_fill(indptr, indices, out)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_masked(impl, g, repeats):
    rng = random.Random(7)
    indptr, indices = g._csr
    masks = []
    for _ in range(50):
        mask = np.array([rng.random() < 0.6 for _ in range(g.n)], dtype=np.uint8)
        srcs = [v for v in range(g.n) if mask[v]]
        if srcs:
            masks.append((mask, rng.choice(srcs)))
    dist = np.empty(g.n, dtype=np.int32)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for mask, src in masks:
            dist.fill(-1)
            impl.bfs_fill_masked(indptr, indices, src, 3, mask, dist)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = random.Random(20260810)
    cases = [
        ("sparse n=200", random_graph(rng, 200, 0.03)),
        ("medium n=500", random_graph(rng, 500, 0.02)),
        ("dense  n=300", random_graph(rng, 300, 0.15)),
    ]
    backends = [("python", _speedups_py)]
    if _speedups is not None:
        backends.append(("cython", _speedups))
    else:
        print("note: compiled extension unavailable, benchmarking fallback only")

    print(f"{'case':<14} {'workload':<10} " + " ".join(f"{n:>10}" for n, _ in backends) + "   speedup")
    for label, g in cases:
        for wl_name, wl in (("all-pairs", bench_all_pairs), ("masked", bench_masked)):
            times = [wl(impl, g, 3) for _, impl in backends]
            speedup = times[0] / times[-1] if len(times) > 1 else 1.0
            cols = " ".join(f"{t * 1e3:9.1f}ms" for t in times)
            print(f"{label:<14} {wl_name:<10} {cols}   {speedup:6.1f}x")


if __name__ == "__main__":
    main()
