"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--nx 4096] [--steps 2000] [--repeat 3]

Both backends are imported in the same process; the numba versions are
warmed up once so compilation is not counted.
"""
import argparse
import timeit

import numpy as np

from linpot import _kernels
from linpot._backend import HAVE_NUMBA


def cn_case(nx, steps):
    x = np.linspace(-40, 40, nx)[1:-1]
    psi = (np.exp(-0.1 * x**2) * np.exp(1j * x)).astype(np.complex128)
    dts = np.full(steps, 1e-4)
    masses = np.ones(steps)
    forces = np.cos(3e-4 * np.arange(steps))
    return psi, x, x[1] - x[0], dts, masses, forces


def airy_case(n):
    rng = np.random.default_rng(0)
    x0 = np.round(rng.uniform(-10, 8, n) * 4) / 4
    x = x0 + rng.uniform(-0.125, 0.125, n)
    return x, x0, rng.normal(size=n), rng.normal(size=n), 30


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nx", type=int, default=4096)
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--airy-points", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    cases = {
        f"crank-nicolson nx={args.nx} steps={args.steps}":
            (cn_case(args.nx, args.steps), _kernels.cn_propagate_numpy, getattr(_kernels, "cn_propagate_numba", None)),
        f"airy taylor n={args.airy_points}":
            (airy_case(args.airy_points), _kernels.airy_taylor_numpy, getattr(_kernels, "airy_taylor_numba", None)),
    }
    print(f"{'kernel':<40} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8}")
    for name, (data, slow, fast) in cases.items():
        t_np = best(lambda: slow(*data), args.repeat)
        if HAVE_NUMBA and fast is not None:
            fast(*data)
            t_nb = best(lambda: fast(*data), args.repeat)
            print(f"{name:<40} {t_np:>10.3f} {t_nb:>10.3f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{name:<40} {t_np:>10.3f} {'n/a':>10} {'':>8}")


if __name__ == "__main__":
    main()
