"""Timing comparison of the compiled kernels against their pure-Python twins.

Usage: python benchmarks/bench_kernels.py [iterations]
"""

import sys
import timeit

from subgrid import kernels

CASES = [
    ("goldstein_price", (0.5, -0.7)),
    ("easom", (3.0, 3.0)),
    ("rosenbrock", (1.2, 0.8)),
    ("shekel_foxholes", (-31.0, -31.0)),
    ("sphere", ((1.0, -2.0, 3.0),)),
    ("step_floor", ((1.7, -2.3, 0.4, 5.0, -5.0),)),
    ("quartic_noiseless", (tuple(0.1 * i for i in range(30)),)),
]


def per_call(fn, args, number):
    return timeit.timeit(lambda: fn(*args), number=number) / number


def main():
    number = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000
    print("active backend: %s" % kernels.BACKEND)
    if kernels.COMPILED is None:
        print("compiled extension unavailable; timing pure Python only")
    header = "%-18s %12s %12s %9s" % ("kernel", "pure (us)", "comp (us)", "speedup")
    print(header)
    print("-" * len(header))
    for name, args in CASES:
        t_pure = per_call(kernels.PURE[name], args, number)
        row = "%-18s %12.3f" % (name, t_pure * 1e6)
        if kernels.COMPILED is not None:
            t_comp = per_call(kernels.COMPILED[name], args, number)
            row += " %12.3f %8.1fx" % (t_comp * 1e6, t_pure / t_comp)
        print(row)


if __name__ == "__main__":
    main()
