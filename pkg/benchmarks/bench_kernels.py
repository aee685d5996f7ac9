"""Benchmark the compiled kernels against the pure-Python fallback.

Times the three hot primitives (complex gamma, scaled imaginary-order
Bessel series, scaled cross product) and one end-to-end workload (a
resonant-channel sweep point), then prints a table with the speedups.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import math
import statistics
import time

from rindler_purcell import _kernels_py

try:
    from rindler_purcell import _kernels
except ImportError:
    _kernels = None

from rindler_purcell import CavityGeometry, RindlerGeometry
from rindler_purcell.sweep import SweepPlan, run_sweep


def best_of(fn, repeats=5):
    """Best wall-clock time of several runs, in seconds."""
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_cgamma(impl):
    zs = [complex(0.3 + 0.01 * i, 1.0 + 0.02 * i) for i in range(100)]

    def run():
        for z in zs:
            impl.cgamma(z)

    return best_of(run) / len(zs)


def bench_bessel(impl):
    cases = [(2.0 + 0.5 * i, 0.5 + 0.35 * i) for i in range(40)]

    def run():
        for nu, x in cases:
            impl.bessel_i_scaled(nu, x)

    return best_of(run) / len(cases)


def bench_cross(impl):
    cases = [(3.0 + 0.4 * i, 0.4 + 0.2 * i, 1.1 + 0.25 * i) for i in range(40)]

    def run():
        for nu, u, v in cases:
            impl.bessel_cross_scaled(nu, u, v)

    return best_of(run) / len(cases)


def bench_sweep_point():
    """End-to-end: one resonant-channel sweep point under the active backend."""
    plan = SweepPlan(
        length=1.0, mass=1.0, a_grid=(0.3,), mode_subset=(2,), k_max=8
    )

    def run():
        run_sweep(plan)

    return best_of(run, repeats=3)


def main():
    rows = []
    for name, fn in (
        ("complex gamma", bench_cgamma),
        ("scaled Bessel I_{i nu}", bench_bessel),
        ("scaled cross product", bench_cross),
    ):
        t_py = fn(_kernels_py)
        t_c = fn(_kernels) if _kernels is not None else None
        rows.append((name, t_py, t_c))

    width = max(len(r[0]) for r in rows) + 2
    print(f"{'kernel':<{width}}{'pure-python':>14}{'compiled':>14}{'speedup':>10}")
    for name, t_py, t_c in rows:
        py_us = f"{t_py * 1e6:10.2f} us"
        if t_c is None:
            print(f"{name:<{width}}{py_us:>14}{'n/a':>14}{'n/a':>10}")
        else:
            c_us = f"{t_c * 1e6:10.2f} us"
            print(f"{name:<{width}}{py_us:>14}{c_us:>14}{t_py / t_c:9.1f}x")

    t_point = bench_sweep_point()
    print(f"\nresonant-channel sweep point (active backend): {t_point * 1e3:.1f} ms")
    if _kernels is None:
        print("compiled extension not built; showing pure-python only")


if __name__ == "__main__":
    main()
