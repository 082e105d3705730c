"""Timing comparison between the compiled and pure counting kernels.

Runs a few representative injection counts with each kernel and prints a
small table. The pure kernel is selected the same way users select it, by
setting SUPERSAT_PURE=1; the variable is restored afterwards.

Usage: python3 bench/bench_kernels.py [--repeat N]
"""

import argparse
import os
import time

from supersat.constructions import (
    complete,
    counterexample_pattern,
    extremal_host_with_edge,
    kneser,
    turan,
)
from supersat.counting import COMPILED_AVAILABLE, count_injections


def workloads():
    yield "triangle in K(30,30) plus edge", complete(3), turan(60, 2).add_edge(0, 1)
    yield (
        "order-2 pattern in planted-edge host, n=14",
        counterexample_pattern(2),
        extremal_host_with_edge(14, 3, 2).graph,
    )
    yield (
        "petersen in planted-edge host, n=16",
        kneser(5),
        extremal_host_with_edge(16, 2, 3).graph,
    )


def timed(pattern, host, repeat):
    best = None
    value = None
    for _ in range(repeat):
        start = time.perf_counter()
        value = count_injections(pattern, host)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return value, best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=1, help="timings per cell, best is kept")
    args = parser.parse_args()

    saved = os.environ.get("SUPERSAT_PURE")
    rows = []
    try:
        for name, pattern, host in workloads():
            if COMPILED_AVAILABLE:
                os.environ.pop("SUPERSAT_PURE", None)
                value, fast = timed(pattern, host, args.repeat)
            else:
                value, fast = None, None
            os.environ["SUPERSAT_PURE"] = "1"
            pure_value, slow = timed(pattern, host, args.repeat)
            if value is not None and value != pure_value:
                raise AssertionError(f"kernel disagreement on {name}")
            rows.append((name, pure_value, fast, slow))
    finally:
        if saved is None:
            os.environ.pop("SUPERSAT_PURE", None)
        else:
            os.environ["SUPERSAT_PURE"] = saved

    if not COMPILED_AVAILABLE:
        print("compiled kernel not available, timing the pure kernel only")
    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}}  {'injections':>12}  {'compiled':>9}  {'pure':>9}  {'ratio':>6}"
    print(header)
    print("-" * len(header))
    for name, value, fast, slow in rows:
        fast_s = f"{fast:.3f}s" if fast is not None else "n/a"
        ratio = f"x{slow / fast:.1f}" if fast else ""
        print(f"{name:<{width}}  {value:>12}  {fast_s:>9}  {slow:>8.3f}s  {ratio:>6}")


if __name__ == "__main__":
    main()
