"""Compiled vs pure-Python census kernels.

Times ``census_block`` from each backend on the same ranges, checks that the
member flags agree, and reports the speedup. A second table times the full
threaded census with the compiled kernel at several worker counts.

    python benchmarks/bench_census.py --x 20000 --repeat 3
"""

import argparse
import csv
import sys
import time

import numpy as np

from recdiv import _backend
from recdiv.census import census
from recdiv.recurrence import RecurrenceSpec

SPECS = {
    "fibonacci": RecurrenceSpec((1, 1), (0, 1)),
    "pell": RecurrenceSpec((2, 1), (0, 1)),
    "2^n-2": RecurrenceSpec((3, -2), (-1, 0)),
    "tribonacci": RecurrenceSpec((1, 1, 1), (0, 0, 1)),
}


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def kernel_rows(x, repeat):
    compiled = _backend.compiled_kernels
    for name, spec in SPECS.items():
        def run_py():
            return _backend.python_kernels.census_block(spec.coeffs, spec.init, 1, x + 1)

        t_py, flags_py = best_of(run_py, repeat)
        row = {"spec": name, "x": x, "python_s": f"{t_py:.4f}"}
        if compiled is not None:
            def run_c():
                return compiled.census_block(spec.coeffs, spec.init, 1, x + 1)

            t_c, flags_c = best_of(run_c, repeat)
            if not np.array_equal(np.asarray(flags_py, bool), np.asarray(flags_c, bool)):
                raise SystemExit(f"backends disagree on {name}")
            row.update(compiled_s=f"{t_c:.4f}", speedup=f"{t_py / t_c:.1f}")
        yield row


def thread_rows(x, workers, repeat):
    spec = SPECS["fibonacci"]
    for w in workers:
        t, report = best_of(lambda: census(spec, x, workers=w), repeat)
        yield {"workers": w, "x": x, "seconds": f"{t:.4f}", "count": report.count}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--x", type=int, default=20_000, help="range for the kernel comparison")
    parser.add_argument("--census-x", type=int, default=10**6, help="range for the threaded census")
    parser.add_argument("--workers", default="1,2,4", help="comma-separated worker counts")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    print(f"# compiled backend available: {_backend.compiled_kernels is not None}")
    rows = list(kernel_rows(args.x, args.repeat))
    writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)

    if _backend.compiled_kernels is not None:
        print()
        workers = [int(w) for w in args.workers.split(",")]
        rows = list(thread_rows(args.census_x, workers, args.repeat))
        writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


if __name__ == "__main__":
    main()
