"""Compare the compiled and pure-Python subset-rank kernels.

The subset-rank tally (how many column subsets of each size have each
rank) dominates both equivocation-matrix construction and exact
generalized-Hamming-weight computation, so it is the one routine worth
compiling.  This script times both backends on random full-rank bit
matrices of growing width and prints the speedup.

Usage: python3 benchmarks/bench_kernels.py [--max-cols 18] [--repeats 3]
"""

import argparse
import time

import numpy as np

from wiretapkit import _pykernels, bitlinalg, kernels


def random_masks(rows: int, cols: int, rng: np.random.Generator) -> list[int]:
    while True:
        m = bitlinalg.BitMatrix(rng.integers(0, 2, size=(rows, cols), dtype=np.uint8))
        if bitlinalg.rank(m) == rows:
            return bitlinalg.column_masks(m)


def best_of(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-cols", type=int, default=18)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not kernels.HAVE_COMPILED:
        print("compiled kernel unavailable; timing pure Python only")
    rng = np.random.default_rng(args.seed)

    print(f"{'rows x cols':>12} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for cols in range(10, args.max_cols + 1, 2):
        rows = cols // 2
        masks = random_masks(rows, cols, rng)
        t_pure = best_of(lambda: _pykernels.subset_rank_tallies(masks), args.repeats)
        if kernels.HAVE_COMPILED:
            from wiretapkit import _ckernels

            arr = np.asarray(masks, dtype=np.uint64)
            t_c = best_of(lambda: _ckernels.subset_rank_tallies(arr), args.repeats)
            a = _ckernels.subset_rank_tallies(arr)
            b = _pykernels.subset_rank_tallies(masks)
            if not np.array_equal(a, b):
                raise AssertionError(f"backend mismatch at {rows}x{cols}")
            print(f"{rows:>5} x {cols:<4} {t_pure:>10.4f} {t_c:>13.4f} {t_pure / t_c:>7.1f}x")
        else:
            print(f"{rows:>5} x {cols:<4} {t_pure:>10.4f} {'-':>13} {'-':>8}")


if __name__ == "__main__":
    main()
