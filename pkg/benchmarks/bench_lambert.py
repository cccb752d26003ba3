"""Benchmark the compiled vs pure-Python Lambert W kernels.

Usage: python benchmarks/bench_lambert.py [n_points] [repeats]
"""
import sys
import time

import numpy as np

from mimoee.lambert import BACKEND, BRANCH_POINT
from mimoee.lambert._pure import w0_kernel as pure_kernel

try:
    from mimoee.lambert._wcore import w0_kernel as cython_kernel
except ImportError:
    cython_kernel = None


def bench(kernel, x, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        kernel(x)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000
    repeats = int(sys.argv[2]) if len(sys.argv) > 2 else 5
    rng = np.random.default_rng(0)
    # mix of branch-point, moderate, and asymptotic inputs, shuffled
    x = np.concatenate([
        BRANCH_POINT + np.exp(rng.uniform(np.log(1e-9), np.log(0.3), n // 3)),
        np.exp(rng.uniform(np.log(1e-3), np.log(1e3), n // 3)),
        np.exp(rng.uniform(np.log(1e3), np.log(1e12), n - 2 * (n // 3))),
    ])
    rng.shuffle(x)

    print(f"selected backend at import: {BACKEND}")
    t_pure = bench(pure_kernel, x, repeats)
    print(f"pure python : {t_pure * 1e3:8.2f} ms for {n} points "
          f"({n / t_pure / 1e6:.1f} Mpts/s)")
    if cython_kernel is None:
        print("compiled    : extension not built")
        return
    t_cy = bench(cython_kernel, x, repeats)
    print(f"compiled    : {t_cy * 1e3:8.2f} ms for {n} points "
          f"({n / t_cy / 1e6:.1f} Mpts/s)")
    print(f"speedup     : {t_pure / t_cy:.2f}x")
    worst = float(np.max(np.abs(cython_kernel(x) - pure_kernel(x))))
    print(f"max |difference| between backends: {worst:.3e}")


if __name__ == "__main__":
    main()
