"""Time the compiled and pure-Python Bareiss kernels on the same matrices.

    python benchmarks/bench_kernels.py [--trials 2000] [--seed 0]

Workloads are the coefficient matrices the random oracle sweep ranks
(default sampler), plus dense random Gaussian-integer matrices.
"""

import argparse
import time

import numpy as np

from schmidt_kit import _bareiss_py
from schmidt_kit.subspace import build_basis

try:
    from schmidt_kit import _bareiss
except ImportError:
    _bareiss = None


def sweep_matrices(m, n, trials, rng):
    basis = build_basis(m, n)
    stencil = np.zeros((basis.dimension, m * n), dtype=np.int64)
    for r, e in enumerate(basis.elements):
        for c, a in enumerate(e.vector.amplitudes):
            stencil[r, c] = int(a.re)
    cr = rng.integers(-5, 6, size=(trials, basis.dimension))
    ci = rng.integers(-5, 6, size=(trials, basis.dimension))
    return list(zip((cr @ stencil).tolist(), (ci @ stencil).tolist())), m, n


def dense_matrices(side, bound, trials, rng):
    re = rng.integers(-bound, bound + 1, size=(trials, side * side)).tolist()
    im = rng.integers(-bound, bound + 1, size=(trials, side * side)).tolist()
    return list(zip(re, im)), side, side


def time_kernel(fn, mats, rows, cols):
    start = time.perf_counter()
    ranks = [fn(re, im, rows, cols) for re, im in mats]
    return time.perf_counter() - start, ranks


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    workloads = [
        (f"sweep S({m},{n})", sweep_matrices(m, n, args.trials, rng))
        for m, n in [(4, 4), (5, 5), (5, 8), (8, 8), (10, 10)]
    ] + [
        ("dense 6x6 |x|<=9", dense_matrices(6, 9, args.trials, rng)),
        ("dense 10x10 |x|<=3", dense_matrices(10, 3, args.trials, rng)),
    ]

    print(f"{'workload':<20} {'python us':>10} {'cython us':>10} {'speedup':>8} {'fallback':>9}")
    for name, (mats, rows, cols) in workloads:
        t_py, r_py = time_kernel(_bareiss_py.rank_gaussian, mats, rows, cols)
        per_py = 1e6 * t_py / len(mats)
        if _bareiss is None:
            print(f"{name:<20} {per_py:>10.1f} {'n/a':>10} {'':>8} {'':>9}")
            continue
        t_cy, r_cy = time_kernel(_bareiss.rank_gaussian, mats, rows, cols)
        assert r_py == r_cy, name
        fallback = sum(_bareiss.rank_gaussian_fast(re, im, rows, cols) is None for re, im in mats)
        per_cy = 1e6 * t_cy / len(mats)
        print(f"{name:<20} {per_py:>10.1f} {per_cy:>10.1f} {per_py / per_cy:>7.1f}x "
              f"{100 * fallback / len(mats):>8.1f}%")


if __name__ == "__main__":
    main()
