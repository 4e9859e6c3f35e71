"""Compare the pure and compiled elimination kernels on operator matrices.

The matrices are the ones the toolkit actually reduces: filtered slices of
q -> laplacian(psi * q) for ellipsoidal psi over Q, and for the complexified
construction (x3 - phi(x1 + i*x2))^2 over Qi.

Usage:
    python benchmarks/bench_backends.py [--max-degree N] [--repeats R]
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction

from fischerlab import (
    FIELD_Q,
    FischerOperator,
    QuadricDomain,
    filtered_basis,
    khavinson_psi,
    operator_matrix,
)
from fischerlab._kernels import available_backends


def build_cases(max_degree):
    cases = []
    ellipse = QuadricDomain.ellipsoid([Fraction(3, 2), 1])
    op2 = FischerOperator(ellipse.psi)
    ellipsoid = QuadricDomain.ellipsoid([Fraction(3, 2), 1, Fraction(5, 3)])
    op3 = FischerOperator(ellipsoid.psi)
    kop = FischerOperator(khavinson_psi([0, 1]))
    for m in range(6, max_degree + 1, 2):
        basis = filtered_basis(2, m)
        cases.append((f"ellipse d=2 filtered({m})", operator_matrix(op2, basis, basis)))
    for m in range(4, min(max_degree, 8) + 1, 2):
        basis = filtered_basis(3, m)
        cases.append(
            (f"ellipsoid d=3 filtered({m})", operator_matrix(op3, basis, basis))
        )
    for m in range(3, min(max_degree, 6) + 1, 3):
        basis = filtered_basis(3, m)
        cases.append(
            (f"khavinson Qi filtered({m})", operator_matrix(kop, basis, basis))
        )
    return cases


def time_backend(module, matrix, repeats):
    if matrix.field == FIELD_Q:
        flats = matrix._flat_q()
        kernel = lambda: module.rref_q(*flats, matrix.rows, matrix.cols, False)
    else:
        flats = matrix._flat_qi()
        kernel = lambda: module.rref_qi(*flats, matrix.rows, matrix.cols, False)
    best = min(_timed(kernel) for _ in range(repeats))
    return best


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-degree", type=int, default=12)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("note: compiled kernels are not built; timing the pure backend only")
    cases = build_cases(args.max_degree)

    header = f"{'case':<28} {'size':>9} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, matrix in cases:
        size = f"{matrix.rows}x{matrix.cols}"
        pure_t = time_backend(backends["pure"], matrix, args.repeats)
        if "compiled" in backends:
            fast_t = time_backend(backends["compiled"], matrix, args.repeats)
            ratio = pure_t / fast_t if fast_t else float("inf")
            print(f"{name:<28} {size:>9} {pure_t:>9.4f}s {fast_t:>9.4f}s {ratio:>7.2f}x")
        else:
            print(f"{name:<28} {size:>9} {pure_t:>9.4f}s {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
