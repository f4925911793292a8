#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the pure NumPy fallback.

Times Householder QR, column-pivoted QR, the bidiagonal SVD, and the Jacobi
eigensolver on square-ish dense matrices and prints a speedup table.

Usage:
    python benchmarks/backend_benchmark.py [--sizes 100,200,400] [--repeats 3]
"""

import argparse
import time

import numpy as np

from randla.backend import _pykernels

try:
    from randla.backend import _ckernels
except ImportError:
    _ckernels = None


def median_time(fn, repeats):
    fn()  # warm-up
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100,200,400",
                        help="comma-separated row counts (cols = rows // 2)")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]

    if _ckernels is None:
        print("extension not built: showing pure-python timings only")

    rng = np.random.default_rng(0)
    header = f"{'kernel':<22}{'size':<12}{'python (s)':<14}"
    if _ckernels:
        header += f"{'cython (s)':<14}{'speedup':<8}"
    print(header)
    print("-" * len(header))
    for m in sizes:
        n = max(1, m // 2)
        a = rng.standard_normal((m, n))
        sym = a.T @ a / m
        cap = 100 * n
        cases = [
            ("householder_qr", lambda k: k.householder_qr(a)),
            ("column_pivoted_qr", lambda k: k.column_pivoted_qr(a)),
            ("golub_kahan_svd", lambda k: k.golub_kahan_svd(a, cap)),
            ("jacobi_sym_eig", lambda k: k.jacobi_sym_eig(sym, cap)),
        ]
        for name, call in cases:
            t_py = median_time(lambda: call(_pykernels), args.repeats)
            row = f"{name:<22}{f'{m}x{n}':<12}{t_py:<14.4f}"
            if _ckernels:
                t_cy = median_time(lambda: call(_ckernels), args.repeats)
                row += f"{t_cy:<14.4f}{t_py / t_cy:<8.1f}"
            print(row)


if __name__ == "__main__":
    main()
