#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from oscspec._kernels import _pykernels

try:
    from oscspec._kernels import _cykernels
except ImportError:
    _cykernels = None


def _timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=7)
    parser.add_argument("--grid", type=int, default=12000)
    args = parser.parse_args()

    r = np.linspace(0.0, 12.0, args.grid + 1)
    w = 2.0 * 7.5 - 30.0 * np.tanh(r) ** 2
    h = r[1] - r[0]
    theta = np.linspace(0.0, 8.0 * np.pi, 1 << 16)
    p = np.ascontiguousarray(np.exp(1j * theta) * (1.0 + 0.3 * np.cos(theta)))

    cases = [
        ("numerov_count (full sweep)", lambda k: k.numerov_count(w, h, r[1], r[2] ** 2)),
        ("numerov_forward (half sweep)", lambda k: k.numerov_forward(w, h, r[1], r[2] ** 2, args.grid // 2)),
        ("continue_sqrt (64k samples)", lambda k: k.continue_sqrt(p, 1.0 + 0.0j)),
    ]

    print(f"grid points: {args.grid}, repeats: {args.repeats} (best time shown)")
    print(f"{'kernel':<30} {'python':>12} {'cython':>12} {'speedup':>9}")
    for name, call in cases:
        t_py = _timeit(lambda: call(_pykernels), args.repeats)
        if _cykernels is not None:
            t_cy = _timeit(lambda: call(_cykernels), args.repeats)
            print(f"{name:<30} {t_py * 1e3:>10.3f}ms {t_cy * 1e3:>10.3f}ms {t_py / t_cy:>8.1f}x")
        else:
            print(f"{name:<30} {t_py * 1e3:>10.3f}ms {'n/a':>12} {'':>9}")
    if _cykernels is None:
        print("compiled kernels not built; showing fallback only")


if __name__ == "__main__":
    main()
