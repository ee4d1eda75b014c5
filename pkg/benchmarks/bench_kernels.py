"""Compare the numba and numpy modular Gauss-Jordan kernels.

    python benchmarks/bench_kernels.py [--sizes 100 200 400] [--repeat 3]

Both backends are called on the same random sparse integer matrices and
their outputs are checked for equality before timing is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from hyperhodge import _kernels


def random_csr(rng: np.random.Generator, rows: int, cols: int, density: float, p: int):
    mask = rng.random((rows, cols)) < density
    vals = rng.integers(1, p, size=(rows, cols), dtype=np.int64) * mask
    indptr = np.zeros(rows + 1, dtype=np.int64)
    indices, data = [], []
    for i in range(rows):
        nz = np.flatnonzero(vals[i])
        indices.append(nz)
        data.append(vals[i, nz])
        indptr[i + 1] = indptr[i] + nz.size
    return indptr, np.concatenate(indices), np.concatenate(data)


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--density", type=float, default=0.05)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    p = _kernels.prime(0)
    rng = np.random.default_rng(args.seed)
    have = _kernels.HAVE_NUMBA
    print(f"prime {p}, numba available: {have}")
    print(f"{'shape':>12} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for n in args.sizes:
        rows, cols = int(1.5 * n), n
        csr = random_csr(rng, rows, cols, args.density, p)
        t_np = best_of(lambda: _kernels.rref_stream_numpy(*csr, cols, p), args.repeat)
        if have:
            _kernels.rref_stream_numba(*csr, cols, p)  # compile outside the timing
            b1, c1 = _kernels.rref_stream_numpy(*csr, cols, p)
            b2, c2 = _kernels.rref_stream_numba(*csr, cols, p)
            assert np.array_equal(b1, b2) and np.array_equal(c1, c2), "backends disagree"
            t_nb = best_of(lambda: _kernels.rref_stream_numba(*csr, cols, p), args.repeat)
            print(f"{rows:>5}x{cols:<6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{rows:>5}x{cols:<6} {t_np:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
