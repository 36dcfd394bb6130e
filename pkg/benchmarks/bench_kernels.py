"""Compare the compiled counting kernel with the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

from heegex import _kernels_py

try:
    from heegex import _kernels
except ImportError:
    _kernels = None

CASES = [
    # (label, gram, lin, const, modulus)
    ("A1 + A1, mod 2^6", [[2, 0], [0, 2]], [1, 0], 1, 64),
    ("A2(-1), mod 3^4", [[-2, 1], [1, -2]], [0, 1], 2, 81),
    ("U + A1(-3), mod 2^4", [[0, 1, 0], [1, 0, 0], [0, 0, -6]], [0, 0, 3], 1, 16),
    ("D4(-1), mod 3^2", [[-2, 1, 0, 0], [1, -2, 1, 1], [0, 1, -2, 0], [0, 1, 0, -2]], [0, 0, 0, 0], 3, 9),
    ("U + U, mod 2^4", [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], [1, 0, 0, 0], 0, 16),
]


def bench(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return result, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'case':24} {'count':>10} {'numpy [ms]':>11} {'cython [ms]':>12} {'speedup':>8}")
    for label, gram, lin, const, mod in CASES:
        ref, t_py = bench(_kernels_py.count_zeros_mod, (gram, lin, const, mod), args.repeat)
        if _kernels is not None:
            got, t_cy = bench(_kernels.count_zeros_mod, (gram, lin, const, mod), args.repeat)
            assert got == ref, (label, got, ref)
            print(f"{label:24} {ref:>10} {1e3 * t_py:>11.2f} {1e3 * t_cy:>12.2f} {t_py / t_cy:>7.1f}x")
        else:
            print(f"{label:24} {ref:>10} {1e3 * t_py:>11.2f} {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
