"""Compare the compiled and pure-Python labelled-partition kernels.

    python benchmarks/bench_kernels.py [--min-m 6] [--max-m 11] [--repeat 3]

Both backends are run on the same ``m`` and their tables are checked for
equality before timings are reported (best of ``--repeat`` runs).
"""

import argparse
import sys
import timeit

from ncjacobi import _kernels


def best_time(fn, m, repeat):
    return min(timeit.repeat(lambda: fn(m), number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-m", type=int, default=6)
    ap.add_argument("--max-m", type=int, default=11)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if _kernels.compiled_backend is None:
        print("compiled kernel unavailable; build with `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    py, cy = _kernels.python_backend, _kernels.compiled_backend

    print(f"{'m':>3} {'connected':>10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for m in range(args.min_m, args.max_m + 1):
        if py.labelled_table(m) != cy.labelled_table(m):
            print(f"backends disagree at m={m}", file=sys.stderr)
            return 2
        t_py = best_time(py.labelled_table, m, args.repeat)
        t_cy = best_time(cy.labelled_table, m, args.repeat)
        conn = cy.count_labellings(m)[2]
        print(f"{m:>3} {conn:>10} {t_py:>10.4f} {t_cy:>10.4f} {t_py / t_cy:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
