"""Benchmark the jitted enumeration kernels against the pure-numpy fallback.

Sweeps the loose and strict table products of a dense labeled digraph and
one univariate baseline on both backends, checks the histograms agree
bit-for-bit, and prints throughput plus speedup.

Usage:
    python bench/benchmark_kernels.py [--n 3] [--q 2] [--repeat 3]
"""

import argparse
import time

import numpy as np

from fdsrank import kernels
from fdsrank.digraph import Digraph
from fdsrank.enumeration import enumerate_stats, family_size


def dense_digraph(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)])


def time_backend(fn, repeat: int):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=3, help="vertices of the dense graph")
    parser.add_argument("--q", type=int, default=2, help="alphabet size")
    parser.add_argument("--repeat", type=int, default=3, help="timed repetitions, best kept")
    args = parser.parse_args()

    if not kernels.NUMBA_AVAILABLE:
        print("numba is not importable; only the numpy path can run")
        return

    print(f"numba available: {kernels.NUMBA_AVAILABLE}; "
          f"default backend: {kernels.active_backend()}")
    print("warming up jit cache...")
    kernels.warmup()

    d = dense_digraph(args.n)
    for strict in (False, True):
        total = family_size(d, args.q, strict)
        label = "strict" if strict else "loose"
        print(f"\ndense n={args.n} q={args.q} {label}: {total} systems")
        timings = {}
        reports = {}
        for backend in ("numba", "numpy"):
            secs, rep = time_backend(
                lambda b=backend: enumerate_stats(d, args.q, strict=strict, backend=b),
                args.repeat,
            )
            timings[backend] = secs
            reports[backend] = rep.to_json_dict()
            print(f"  {backend:>5}: {secs:8.3f}s  ({total / secs / 1e6:6.2f} M systems/s)")
        assert reports["numba"] == reports["numpy"], "backends disagree"
        print(f"  speedup: {timings['numpy'] / timings['numba']:.1f}x  (histograms identical)")

    q = max(args.q, 4)
    print(f"\nunivariate maps at q={q}: {q ** q} systems")
    timings = {}
    for backend in ("numba", "numpy"):
        secs, hists = time_backend(
            lambda b=backend: kernels.univariate_histograms(q, backend=b), args.repeat
        )
        timings[backend] = secs
        print(f"  {backend:>5}: {secs:8.3f}s")
    a = kernels.univariate_histograms(q, backend="numba")
    b = kernels.univariate_histograms(q, backend="numpy")
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    print(f"  speedup: {timings['numpy'] / timings['numba']:.1f}x  (histograms identical)")


if __name__ == "__main__":
    main()
