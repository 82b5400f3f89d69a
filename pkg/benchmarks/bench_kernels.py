"""Compare fiber-scan backends on a few enumeration-heavy instances.

    python3 benchmarks/bench_kernels.py [--repeat N] [--skip-python]
"""

import argparse
import time

from cyclic_ehrhart import _kernels
from cyclic_ehrhart.oracle import level_system

INSTANCES = [
    ((1, 2, 3, 4, 5, 6), 3, 3),
    ((-5, -2, 0, 3, 7, 10), 4, 2),
    ((-5, -1, 2, 4, 7, 9, 10), 4, 3),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-python", action="store_true", help="the big-int path is slow on large boxes")
    args = parser.parse_args()

    backends = ["numba", "numpy"] + ([] if args.skip_python else ["python"])
    if _kernels.HAVE_NUMBA:
        # compile outside the timed region
        _kernels.scan(level_system((1, 2, 3), 2, 1), "numba")
    print(f"{'instance':<34} {'points':>12} " + " ".join(f"{b:>10}" for b in backends))
    for T, d, m in INSTANCES:
        system = level_system(T, d, m)
        cells, results = [], set()
        for b in backends:
            secs, res = best_of(lambda: _kernels.scan(system, b), 1 if b == "python" else args.repeat)
            cells.append(f"{secs:>9.3f}s")
            results.add(res)
        assert len(results) == 1, f"backends disagree on {T}, d={d}, m={m}"
        label = f"T={T} d={d} m={m}"
        print(f"{label:<34} {results.pop().closed:>12} " + " ".join(cells))


if __name__ == "__main__":
    main()
