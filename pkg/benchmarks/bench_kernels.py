"""Time each kernel under every importable backend.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import math
import timeit

import numpy as np

from blossomspin.kernels import available_backends


def cases():
    rng = np.random.default_rng(1)
    P = rng.normal(size=(21, 3))
    params = rng.uniform(0, 1, size=20)
    d = 8
    w = np.array([math.comb(d, k) for k in range(d + 1)], dtype=float)
    L0, T = rng.normal(size=3), rng.normal(size=3)
    return {
        "bernstein_row(20)": lambda k: k.bernstein_row(20, 0.3),
        "de_casteljau(d=20, n=3)": lambda k: k.de_casteljau(P, params),
        "subdivide(d=20, n=3)": lambda k: k.subdivide(P, 0.4),
        "fs_area_midpoint(d=8, 200x200)": lambda k: k.fs_area_midpoint(d, 200, 200, w),
        "precess_rotation(1e5 steps)": lambda k: k.precess_rotation(L0, T, 1e-3, 100_000, 1),
        "precess_rk4(1e5 steps)": lambda k: k.precess_rk4(L0, T, 1e-3, 100_000, 1),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'kernel':34}" + "".join(f"{n:>14}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases().items():
        best = {}
        for n in names:
            k = backends[n]
            fn(k)  # warm up
            timer = timeit.Timer(lambda: fn(k))
            number, _ = timer.autorange()
            best[n] = min(timer.repeat(args.repeat, number)) / number
        row = f"{label:34}" + "".join(f"{best[n] * 1e3:>11.4f} ms" for n in names)
        if "cython" in best:
            row += f"  {best['python'] / best['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
