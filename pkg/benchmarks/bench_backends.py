"""Benchmark the numba kernels against the pure-numpy fallback.

Times the hot kernels (paravector product, polynomial and plane-wave
evaluation) with both implementations in-process, then runs one verification
suite end to end per backend in subprocesses with PARACALC_BACKEND set.

Run: python3 benchmarks/bench_backends.py [--repeat 5] [--skip-suite]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from paracalc import kernels  # noqa: E402


def make_workloads(rng):
    quads = [rng.normal(size=4) + 1j * rng.normal(size=4) for _ in range(4000)]
    exps = rng.integers(0, 4, size=(35, 4))
    coeffs = rng.normal(size=(35, 4)) + 1j * rng.normal(size=(35, 4))
    k4 = rng.normal(size=4) + 1j * rng.normal(size=4)
    amp = rng.normal(size=4) + 1j * rng.normal(size=4)
    return {
        "pv_mul": [(a, b) for a, b in zip(quads[::2], quads[1::2])],
        "poly_eval": [(exps, coeffs, x) for x in quads[:2000]],
        "plane_wave_eval": [(k4, amp, x) for x in quads[:2000]],
    }


def time_impl(fn, calls, repeat):
    for args in calls[:50]:  # warmup (includes jit compilation)
        fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in calls:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best / len(calls)


def bench_kernels(repeat):
    rng = np.random.default_rng(0)
    workloads = make_workloads(rng)
    jitted = kernels.jitted_impls()
    print(f"{'kernel':<16} {'numpy us/call':>14} {'numba us/call':>14} {'speedup':>8}")
    for name, calls in workloads.items():
        t_np = time_impl(kernels.NUMPY_IMPLS[name], calls, repeat)
        if jitted is None:
            print(f"{name:<16} {t_np * 1e6:>14.3f} {'n/a':>14} {'n/a':>8}")
            continue
        t_nb = time_impl(jitted[name], calls, repeat)
        print(f"{name:<16} {t_np * 1e6:>14.3f} {t_nb * 1e6:>14.3f} "
              f"{t_np / t_nb:>7.2f}x")


def bench_suite():
    print()
    print("end-to-end `check transforms --samples 25` wall time per backend:")
    for backend in ("numpy", "numba"):
        env = dict(os.environ, PARACALC_BACKEND=backend)
        cmd = [sys.executable, "-m", "paracalc.cli", "check", "transforms",
               "--samples", "25"]
        # one untimed run to populate the jit cache
        subprocess.run(cmd, env=env, capture_output=True, check=True)
        t0 = time.perf_counter()
        subprocess.run(cmd, env=env, capture_output=True, check=True)
        print(f"  {backend:<6} {time.perf_counter() - t0:8.2f} s")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--skip-suite", action="store_true")
    args = parser.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    bench_kernels(args.repeat)
    if not args.skip_suite:
        bench_suite()


if __name__ == "__main__":
    main()
