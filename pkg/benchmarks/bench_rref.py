"""Time the compiled and pure-Python elimination kernels on the same inputs.

Workloads: the ternary Leibniz system of a triangular algebra, a dense
random integer matrix and a sparse one.  Both kernels must return identical
results; the script exits non-zero if they do not.
"""

import argparse
import random
import sys
import time

from triality.algebra import upper_triangular
from triality.linalg import _rref_py
from triality.linalg.matrix import _integer_row
from triality.ternary import leibniz_rows
from triality.triangular import build_triangular

try:
    from triality.linalg import _rref_c
except ImportError:
    _rref_c = None


def leibniz_workload(n):
    a = upper_triangular(n)
    t = build_triangular(a, a)
    rows = [_integer_row(r) for r in leibniz_rows(t.algebra)]
    return f"Trian(T{n}) ternary system", rows, len(rows[0])


def dense_workload(n, rng):
    rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n - 5)]
    return f"dense {n - 5}x{n}", rows, n


def sparse_workload(nrows, ncols, density, rng):
    rows = [[rng.randint(-3, 3) if rng.random() < density else 0 for _ in range(ncols)]
            for _ in range(nrows)]
    return f"sparse {nrows}x{ncols}", rows, ncols


def best_of(fn, rows, ncols, repeat):
    times = []
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn([list(r) for r in rows], ncols)
        times.append(time.perf_counter() - start)
    return min(times), out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trian-size", type=int, default=3, help="n for Trian(Tn, Tn, Tn)")
    p.add_argument("--dense", type=int, nargs="*", default=[60, 120])
    p.add_argument("--sparse", type=int, nargs=2, default=[200, 150], metavar=("ROWS", "COLS"))
    p.add_argument("--density", type=float, default=0.1)
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args(argv)

    if _rref_c is None:
        print("compiled kernel not built; only the Python kernel is available", file=sys.stderr)
    rng = random.Random(args.seed)
    workloads = [leibniz_workload(args.trian_size)]
    workloads += [dense_workload(n, rng) for n in args.dense]
    workloads.append(sparse_workload(*args.sparse, args.density, rng))

    print(f"{'workload':32} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    mismatch = False
    for label, rows, ncols in workloads:
        t_py, r_py = best_of(_rref_py.rref_int, rows, ncols, args.repeat)
        if _rref_c is None:
            print(f"{label:32} {t_py:10.3f} {'-':>10} {'-':>8}")
            continue
        t_c, r_c = best_of(_rref_c.rref_int, rows, ncols, args.repeat)
        mismatch |= r_py != r_c
        print(f"{label:32} {t_py:10.3f} {t_c:10.3f} {t_py / t_c:8.2f}x")
    if mismatch:
        print("kernels disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
