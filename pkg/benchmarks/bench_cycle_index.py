"""Benchmark: compiled vs pure-Python pairing-graph enumeration.

The enumeration over all (2n)! permutations is the package's hot loop.
Usage: python benchmarks/bench_cycle_index.py [--max-n 5] [--repeat 3]
"""

import argparse
import time

from fockkrein.kernels import KERNEL_BACKEND, cycle_type_counts, python_kernel


def best_of(fn, n, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(n)
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=5)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--python-max-n", type=int, default=4,
                        help="cap for the pure-Python backend (n=5 walks 3.6M graphs)")
    args = parser.parse_args()

    print(f"active backend: {KERNEL_BACKEND}")
    header = f"{'n':>3} {'(2n)!':>12} {'python [s]':>12} {'compiled [s]':>13} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    import math

    for n in range(1, args.max_n + 1):
        perms = math.factorial(2 * n)
        py_time = py_result = None
        if n <= args.python_max_n:
            py_time, py_result = best_of(python_kernel.cycle_type_counts, n, args.repeat)
        if KERNEL_BACKEND == "compiled":
            cy_time, cy_result = best_of(cycle_type_counts, n, args.repeat)
            if py_result is not None and dict(py_result) != dict(cy_result):
                raise SystemExit(f"backend disagreement at n={n}")
            speedup = f"{py_time / cy_time:9.1f}" if py_time else "      n/a"
            py_str = f"{py_time:12.4f}" if py_time else "     skipped"
            print(f"{n:>3} {perms:>12} {py_str} {cy_time:13.4f} {speedup}")
        else:
            py_str = f"{py_time:12.4f}" if py_time else "     skipped"
            print(f"{n:>3} {perms:>12} {py_str} {'not built':>13} {'n/a':>9}")


if __name__ == "__main__":
    main()
