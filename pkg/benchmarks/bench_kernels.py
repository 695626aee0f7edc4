"""Time the numba and numpy edit-distance kernels side by side.

    python3 benchmarks/bench_kernels.py [--lengths 10 20 30] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from wordqe._kernels import numba_kernels, numpy_kernels


def make_pair(rng, n, vocab=50):
    pe = rng.integers(0, vocab, size=n)
    mt = pe.copy()
    flip = rng.random(n) < 0.2
    mt[flip] = rng.integers(0, vocab, size=int(flip.sum()))
    return mt.astype(np.int64), pe.astype(np.int64)


def bench(fn, args, repeat):
    fn(*args)  # warm up / compile
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.2:
        number *= 2
    best = min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat))
    return best / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--lengths", type=int, nargs="+", default=[10, 20, 30])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if numba_kernels is None:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    print(f"{'kernel':<12}{'len':>5}{'numpy (us)':>14}{'numba (us)':>14}{'speedup':>10}")
    for n in args.lengths:
        a, b = make_pair(rng, n)
        cases = {
            "edit_cost": (a, b),
            "align_ops": (a, b),
            "best_shift": (a, b, 10, 50),
        }
        for name, call_args in cases.items():
            t_np = bench(getattr(numpy_kernels, name), call_args, args.repeat)
            t_nb = bench(getattr(numba_kernels, name), call_args, args.repeat)
            print(f"{name:<12}{n:>5}{t_np * 1e6:>14.1f}{t_nb * 1e6:>14.1f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
