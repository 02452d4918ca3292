"""Numba vs numpy timings for the two hot kernels.

    python3 benchmarks/bench_kernels.py [--sizes 1000 100000] [--repeat 5]

The compiled path is skipped (and reported as such) when numba is missing or
SCARF2_DISABLE_NUMBA is set. Agreement between the two paths is printed next
to the timings.
"""
import argparse
import timeit

import numpy as np

from scarf2 import kernels
from scarf2._accel import NUMBA_ENABLED, backend
from scarf2.special_functions import jacobi_coefficients


def best_of(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def bench_f_values(size, repeat, n=6, a=-4.5 + 0.3j, b=-7.1):
    x = np.linspace(-30.0, 30.0, size)
    w = jacobi_coefficients(n, a, b)
    esum = (a + b) / 2 + 0.5 + n
    d0 = (b - a) / 2 - n
    ref = kernels.f_values_numpy(x, w, esum, d0)
    number = max(1, 200000 // size)
    out = {"numpy": best_of(lambda: kernels.f_values_numpy(x, w, esum, d0), repeat, number)}
    if NUMBA_ENABLED:
        kernels.f_values_compiled(x, w, esum, d0)  # compile outside the timing
        got = kernels.f_values_compiled(x, w, esum, d0)
        out["numba"] = best_of(lambda: kernels.f_values_compiled(x, w, esum, d0), repeat, number)
        out["max_rel_diff"] = float(np.max(np.abs(got - ref) / np.maximum(np.abs(ref), 1e-300)))
    return out


def bench_loggamma(size, repeat, seed=0):
    rng = np.random.default_rng(seed)
    zs = [complex(r, i) for r, i in rng.uniform(-20, 20, size=(size, 2))]
    out = {"numpy": best_of(lambda: [kernels.loggamma_py(z) for z in zs], repeat, 1)}
    if NUMBA_ENABLED:
        kernels.loggamma_compiled(zs[0])
        out["numba"] = best_of(lambda: [kernels.loggamma_compiled(z) for z in zs], repeat, 1)
        diffs = [abs(kernels.loggamma_compiled(z) - kernels.loggamma_py(z)) for z in zs]
        out["max_rel_diff"] = max(d / max(abs(kernels.loggamma_py(z)), 1.0) for d, z in zip(diffs, zs))
    return out


def report(name, size, res):
    line = f"{name:10s} n={size:>8d}  numpy {res['numpy'] * 1e3:9.3f} ms"
    if "numba" in res:
        line += (f"  numba {res['numba'] * 1e3:9.3f} ms  speedup {res['numpy'] / res['numba']:6.1f}x"
                 f"  max rel diff {res['max_rel_diff']:.1e}")
    else:
        line += "  numba skipped"
    print(line)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[1000, 100000])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    print(f"backend: {backend()}")
    for size in args.sizes:
        report("f_values", size, bench_f_values(size, args.repeat))
    for size in args.sizes:
        report("loggamma", min(size, 20000), bench_loggamma(min(size, 20000), args.repeat))


if __name__ == "__main__":
    main()
