"""Benchmark the pure-Python kernels against the compiled extension.

Run from the repository root after building the extension:

    python setup.py build_ext --inplace
    python benchmarks/bench_kernels.py

Each row reports the per-call cost in both lanes for the operations that
dominate the package's runtime: scalar Airy evaluation (1D quadratures),
complex upper incomplete gamma (every wave-function point), and a
phase-space density grid plus a full wave-function normalization, which
stack thousands of kernel calls.
"""

import os
import time

os.environ.setdefault("HTA_THREADS", "1")

from htaspec.backend import kernel_lanes  # noqa: E402


def timeit(fn, number):
    t0 = time.perf_counter()
    for _ in range(number):
        fn()
    return (time.perf_counter() - t0) / number


def bench_airy(mod):
    xs = [(-30.0 + 0.012 * i) for i in range(5000)]

    def run():
        for x in xs:
            mod.airy_ai(x)

    return timeit(run, 3) / len(xs)


def bench_incgamma(mod):
    cases = [(3.37 - 0.4j, complex(2.0 + 0.03 * i, 1.5 - 0.05 * i)) for i in range(1500)]

    def run():
        for s, z in cases:
            mod.upper_gamma_cx(s, z)

    return timeit(run, 3) / len(cases)


def bench_psi_grid(lane):
    os.environ["HTA_BACKEND"] = lane
    import importlib

    import htaspec.backend
    import htaspec.special
    import htaspec.waves

    importlib.reload(htaspec.backend)
    importlib.reload(htaspec.special)
    importlib.reload(htaspec.waves)
    from htaspec import core
    from htaspec.core import CornellParams, MesonSystem, QuantumState

    sys_v = MesonSystem(1.23, 1.23, CornellParams(-1.6808, 0.4069, 0.5074))
    st = QuantumState.from_label("1S")
    params = htaspec.waves.wave_params(sys_v, st, core.energy_real(sys_v, st))

    t0 = time.perf_counter()
    htaspec.waves.density_grid(params, 0, (0.05, 6.0, 80), (-1.0, 1.0, 40))
    t_grid = time.perf_counter() - t0

    t0 = time.perf_counter()
    htaspec.waves.normalize_B(params, 0)
    t_norm = time.perf_counter() - t0
    return t_grid, t_norm


def main():
    lanes = kernel_lanes()
    print(f"kernel lanes available: {', '.join(lanes)}")
    rows = []
    for name, mod in lanes.items():
        rows.append((name, bench_airy(mod) * 1e6, bench_incgamma(mod) * 1e6))
    print(f"\n{'lane':<10} {'airy_ai us/call':>18} {'upper_gamma us/call':>21}")
    for name, airy_us, incg_us in rows:
        print(f"{name:<10} {airy_us:>18.2f} {incg_us:>21.2f}")
    if len(rows) == 2:
        (n0, a0, g0), (n1, a1, g1) = rows
        fast, slow = (rows[1], rows[0]) if a1 < a0 else (rows[0], rows[1])
        print(f"\nspeedup ({fast[0]} over {slow[0]}): airy {slow[1] / fast[1]:.1f}x, incgamma {slow[2] / fast[2]:.1f}x")

    print("\nend-to-end (80x40 density grid, ground-state normalization):")
    for lane in lanes:
        t_grid, t_norm = bench_psi_grid(lane)
        print(f"{lane:<10} grid {t_grid:.2f}s   normalize_B {t_norm:.2f}s")


if __name__ == "__main__":
    main()
