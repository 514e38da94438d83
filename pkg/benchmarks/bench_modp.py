"""Benchmark the two mod-p rank kernels on identical random matrices.

Compares the numba-jitted elimination against the vectorized numpy
fallback (the one selected at import time by MARKEDBRAUER_PURE_NUMPY).
Both kernels must agree on every rank; the script exits nonzero if they
ever disagree.

Usage:
    python3 benchmarks/bench_modp.py [--sizes 200,400,800] [--repeats 3]
"""

import argparse
import sys
import time

import numpy as np

from markedbrauer import modp


def random_matrix(rng, nrows, ncols, rank, p):
    """A matrix over Z/p with the requested rank, as an int64 array."""
    left = rng.integers(0, p, size=(nrows, rank), dtype=np.int64)
    right = rng.integers(0, p, size=(rank, ncols), dtype=np.int64)
    return left @ right % p


def time_kernel(kernel, a, p, repeats):
    best = float("inf")
    rank = None
    for _ in range(repeats):
        work = a.copy()
        t0 = time.perf_counter()
        rank = int(kernel(work, p))
        best = min(best, time.perf_counter() - t0)
    return rank, best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="200,400,800",
                        help="comma-separated square matrix sizes")
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats per size (best is reported)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if not modp.USING_NUMBA:
        print("numba kernel unavailable (MARKEDBRAUER_PURE_NUMPY set or "
              "numba missing); nothing to compare")
        return 0

    p = 1048583  # prime just above 2^20
    rng = np.random.default_rng(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]

    # Compile outside the timed region.
    warm = random_matrix(rng, 8, 8, 4, p)
    modp._rank_mod_p_numba(warm.copy(), np.int64(p))

    print(f"prime p = {p}, repeats = {args.repeats} (best shown)")
    print(f"{'size':>6} {'rank':>6} {'numba [s]':>12} {'numpy [s]':>12} "
          f"{'speedup':>8}")
    ok = True
    for n in sizes:
        a = random_matrix(rng, n, n, n // 2, p)
        r_nb, t_nb = time_kernel(
            lambda m, q: modp._rank_mod_p_numba(m, np.int64(q)),
            a, p, args.repeats)
        r_np, t_np = time_kernel(modp._rank_mod_p_numpy, a, p, args.repeats)
        if r_nb != r_np:
            print(f"DISAGREEMENT at size {n}: numba={r_nb} numpy={r_np}")
            ok = False
            continue
        print(f"{n:>6} {r_nb:>6} {t_nb:>12.4f} {t_np:>12.4f} "
              f"{t_np / t_nb:>7.2f}x")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
