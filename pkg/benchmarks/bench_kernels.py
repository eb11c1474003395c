"""Time the numba kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5]

Uses the default Wigner workload (801 x 201 grid, gamma = sigma = 1, t = pi/4)
and a long cumulative Simpson integral.  JIT compilation is excluded by a
warm-up call and reported separately.
"""
import argparse
import math
import time

import numpy as np

from dwtunnel import _accel, dynamics, kernels
from dwtunnel.eigenmodes import ModelParams


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.HAS_NUMBA:
        raise SystemExit("numba is not available (or DWTUNNEL_NO_NUMBA is set); nothing to compare")

    st = dynamics.state(ModelParams(1.0, 1.0), "stable", math.pi / 4)
    y = np.exp(-np.linspace(-10, 10, 2_000_001) ** 2)

    t0 = time.perf_counter()
    dynamics.wigner(st)
    kernels.cumulative_simpson_numba(y, 1e-5)
    compile_time = time.perf_counter() - t0

    rows = []
    for name, run_numba, run_numpy in (
        ("wigner 801x201", lambda: dynamics.wigner(st), lambda: dynamics.wigner(st)),
        ("cumulative simpson 2e6", lambda: kernels.cumulative_simpson_numba(y, 1e-5),
         lambda: kernels.cumulative_simpson_numpy(y, 1e-5)),
    ):
        _accel.USE_NUMBA = True
        fast = best_of(run_numba, args.repeat)
        _accel.USE_NUMBA = False
        slow = best_of(run_numpy, args.repeat)
        _accel.USE_NUMBA = True
        rows.append((name, fast, slow))

    _accel.USE_NUMBA = True
    a = dynamics.wigner(st).values
    _accel.USE_NUMBA = False
    b = dynamics.wigner(st).values
    _accel.USE_NUMBA = True

    print(f"first call incl. JIT compile: {compile_time:.2f} s")
    print(f"{'kernel':<24} {'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}")
    for name, fast, slow in rows:
        print(f"{name:<24} {fast:>10.4f} {slow:>10.4f} {slow / fast:>7.1f}x")
    print(f"max |W_numba - W_numpy| = {np.max(np.abs(a - b)):.2e}")


if __name__ == "__main__":
    main()
