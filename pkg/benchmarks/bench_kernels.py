"""Compare the compiled and pure-Python jet kernels.

    python3 benchmarks/bench_kernels.py [--order 16] [--points 1008] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from harmlab import kernels
from harmlab.catalog import catalog_lookup
from harmlab.grid import GridSpec
from harmlab.harmonic import HarmonicMap, verify_jacobian_pde


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=16)
    ap.add_argument("--points", type=int, default=1008)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    shape = (args.order + 1, args.points)
    a = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    a[0] += 3
    b = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    coeffs = rng.normal(size=65) + 1j * rng.normal(size=65)
    z = 0.6 * np.exp(2j * np.pi * rng.uniform(size=args.points))
    f = HarmonicMap(*catalog_lookup("blaschke-dil"))
    grid = GridSpec(0.6, 21, 48)

    cases = {
        "mul": lambda: kernels.mul(a, b),
        "recip": lambda: kernels.recip(a),
        "exp": lambda: kernels.exp(a * 0.1),
        "log": lambda: kernels.log(a),
        "taylor_shift": lambda: kernels.taylor_shift(coeffs, z, args.order),
        "verify_jacobian_pde": lambda: verify_jacobian_pde(f, grid),
    }
    backends = sorted(kernels.BACKENDS)
    previous = kernels.BACKEND
    results = {}
    for name in backends:
        kernels.set_backend(name)
        for case, fn in cases.items():
            results[case, name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    kernels.set_backend(previous)

    print(f"order {args.order}, {args.points} points, best of {args.repeat}")
    print(f"{'case':<16}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for case in cases:
        row = f"{case:<16}" + "".join(f"{results[case, b] * 1e3:>10.2f}ms" for b in backends)
        if len(backends) > 1:
            row += f"{results[case, 'python'] / results[case, 'cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
