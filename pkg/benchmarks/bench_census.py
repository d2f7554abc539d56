"""Census kernel benchmark: compiled extension vs pure Python.

Runs the same census instances through both backends, asserts the rows are
bit-identical, and prints a timing table. Invoke from the repository root:

    python3 benchmarks/bench_census.py
"""

import time
from fractions import Fraction

from parmirror import kernels
from parmirror.chambers import sample_generic_weights, weight_denominator
from parmirror.moduli import ModuliParams

INSTANCES = [
    ("n=2 g=3 k=2", ModuliParams(2, 3, 2, 1), Fraction(1)),
    ("n=3 g=2 k=2", ModuliParams(3, 2, 2, 0), Fraction(1)),
    ("n=3 g=3 k=2", ModuliParams(3, 3, 2, 1), Fraction(1)),
    ("n=5 g=2 k=1", ModuliParams(5, 2, 1, 0), Fraction(1, 40)),
    ("n=5 g=3 k=1", ModuliParams(5, 3, 1, 2), Fraction(1, 40)),
]
REPEATS = 5


def _args(p, scale):
    w = sample_generic_weights(p, seed=1, scale=scale)
    den = weight_denominator(w)
    wnum = tuple(tuple(int(a * den) for a in row) for row in w.alpha)
    return (p.n, p.g, p.k, p.d, wnum, den)


def _time(backend, args):
    best = float("inf")
    rows = None
    for _ in range(REPEATS):
        start = time.perf_counter()
        rows = kernels.enumerate_census(*args, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best, rows


def main():
    if not kernels.HAVE_COMPILED:
        print("compiled kernel not available; showing pure Python only")
    header = f"{'instance':<14} {'rows':>7} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, p, scale in INSTANCES:
        args = _args(p, scale)
        t_py, rows_py = _time("python", args)
        if kernels.HAVE_COMPILED:
            t_cy, rows_cy = _time("compiled", args)
            assert rows_py == rows_cy, f"backend mismatch on {label}"
            print(f"{label:<14} {len(rows_py):>7} {t_py*1000:>8.2f}ms {t_cy*1000:>8.2f}ms"
                  f" {t_py/t_cy:>7.1f}x")
        else:
            print(f"{label:<14} {len(rows_py):>7} {t_py*1000:>8.2f}ms {'-':>10} {'-':>8}")
    print("\nrows are bit-identical across backends")


if __name__ == "__main__":
    main()
