"""Time the numba kernels against their numpy/interpreted fallbacks.

    python3 benchmarks/bench_kernels.py [--n 20000] [--repeat 5]

Both paths run in the same process, so RANDFA_DISABLE_NUMBA is not needed here.
"""

import argparse
import timeit

import numpy as np

from randfa import kernels
from randfa.random_gen import sample_dfa, substream


def best(fn, repeat):
    fn()  # warm-up, also triggers compilation
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20_000)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    d = sample_dfa(args.n, args.k, 0.5, 1)
    small = sample_dfa(min(args.n, 400), args.k, 0.5, 2)
    hop_n = min(args.n, 3000)
    hop = sample_dfa(hop_n, args.k, 0.5, 3)
    balls = substream(4, 0).integers(0, args.n, size=args.k * args.n + 1)
    mat = substream(5, 0).integers(0, 1000, size=(4096, 1000)).astype(np.int32)
    times = np.array([10, 100, 500, 1000])

    cases = [
        (f"bfs n={args.n}", lambda: kernels.bfs_order_jit(d.delta, 0), lambda: kernels.bfs_order_numpy(d.delta, 0)),
        (f"spectra n={small.n}", lambda: kernels.spectra_jit(small.delta), lambda: kernels.spectra_numpy(small.delta)),
        (
            f"hopcroft n={hop_n}",
            lambda: kernels.hopcroft_jit(hop.delta, hop.accepting),
            lambda: kernels.hopcroft_python(hop.delta, hop.accepting),
        ),
        (f"occupancy t={balls.size}", lambda: kernels.occupancy_jit(balls, args.n), lambda: kernels.occupancy_numpy(balls, args.n)),
        (
            "occupancy_at 4096x1000",
            lambda: kernels.occupancy_at_jit(mat, 1000, times),
            lambda: kernels.occupancy_at_numpy(mat, 1000, times),
        ),
    ]

    print(f"{'kernel':<28}{'numba ms':>12}{'fallback ms':>14}{'speedup':>10}")
    for name, fast, slow in cases:
        a = best(fast, args.repeat)
        b = best(slow, args.repeat)
        print(f"{name:<28}{a * 1e3:>12.3f}{b * 1e3:>14.3f}{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
