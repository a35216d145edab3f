"""Compare the numba and numpy smallest-eigenvalue kernels.

Times the N-family ladder workload (one matrix per level r = 1..rmax) and a
batch of random tridiagonals, and checks both backends agree.

    python3 benchmarks/bench_sturm.py [--rmax 200] [--repeat 5]
"""
import argparse
import time

import numpy as np

from gsnw import _accel


def n_family_matrices(rmax, omegac=-0.9):
    out = []
    for r in range(2, rmax + 1):
        i = np.arange(r, dtype=np.float64)
        out.append((2.0 * i, omegac * np.arange(1, r, dtype=np.float64)))
    return out


def random_matrices(n, rmax, seed=0):
    rng = np.random.default_rng(seed)
    sizes = rng.integers(2, rmax + 1, n)
    return [(rng.uniform(-10, 10, r), rng.uniform(-5, 5, r - 1)) for r in sizes]


def best_time(kernel, mats, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        vals = [kernel(d, e) for d, e in mats]
        best = min(best, time.perf_counter() - t0)
    return best, np.array(vals)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rmax", type=int, default=200)
    ap.add_argument("--random", type=int, default=500)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed")

    _accel.warmup()
    workloads = {
        f"N ladder r<= {args.rmax}": n_family_matrices(args.rmax),
        f"{args.random} random r<=50": random_matrices(args.random, 50),
    }
    print(f"{'workload':<24}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}{'max diff':>12}")
    for name, mats in workloads.items():
        t_nb, v_nb = best_time(_accel.min_eigenvalue_numba, mats, args.repeat)
        t_np, v_np = best_time(_accel.min_eigenvalue_numpy, mats, args.repeat)
        diff = float(np.max(np.abs(v_nb - v_np)))
        print(f"{name:<24}{t_nb:>12.4f}{t_np:>12.4f}{t_np / t_nb:>10.1f}{diff:>12.1e}")


if __name__ == "__main__":
    main()
