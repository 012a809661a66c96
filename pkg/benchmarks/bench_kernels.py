"""Timing comparison of the compiled kernels against the pure-Python fallback.

Runs the RK4 integrator and the vectorized odd-function evaluation through
both backends in one process and prints best-of-N wall times. Invoke as

    python3 benchmarks/bench_kernels.py [--steps 100000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from sectorcert import ControlLaw, Disturbance, Gain, OddFunction, Plant
from sectorcert import _kernels
from sectorcert.sim import _encode_for_kernels


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_rk4(steps, repeats):
    plant = Plant(a=[[0.0, 1.0], [0.0, 0.0]], b=[0.0, 1.0], d=[0.0, 1.0], f_bar=0.1)
    law = ControlLaw.componentwise(Gain([-2.0, -3.0]), [OddFunction.saturation(1.0, 1.0)])
    code, fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len = _encode_for_kernels(law, 2)
    dt = 1e-3
    fsamp = Disturbance.sinusoid(0.1, 2.0).samples(1, dt, steps, 0.1)
    head = (
        np.array(plant.a, dtype=float), np.array(plant.b[:, 0], dtype=float),
        np.array(plant.d, dtype=float), np.array([-2.0, -3.0]),
        code, fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len,
    )
    x0 = np.array([0.4, -0.2])

    def run(loop):
        states = np.zeros((steps + 1, 2))
        controls = np.zeros(steps + 1)
        loop(*head, x0.copy(), dt, steps, fsamp, states, controls)

    rows = [("rk4 python", best_of(lambda: run(_kernels.rk4_loop_py), repeats))]
    if _kernels.JIT_ENABLED:
        run(_kernels.rk4_loop_jit)  # compile outside the timed region
        rows.append(("rk4 numba", best_of(lambda: run(_kernels.rk4_loop_jit), repeats)))
    return rows


def bench_phi(count, repeats):
    svec = np.concatenate([-np.geomspace(1e-6, 1e3, count // 2),
                           np.geomspace(1e-6, 1e3, count // 2)])
    out = np.empty_like(svec)
    tab_s, tab_v = _kernels.dummy_table()

    def run(kernel):
        kernel(2, 2.0, 1.5, 0.0, tab_s, tab_v, 0, 2, svec, out)

    rows = [("phi python", best_of(lambda: run(_kernels.phi_array_py), repeats))]
    if _kernels.JIT_ENABLED:
        run(_kernels.phi_array_jit)
        rows.append(("phi numba", best_of(lambda: run(_kernels.phi_array_jit), repeats)))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=100_000, help="RK4 steps per run")
    parser.add_argument("--count", type=int, default=1_000_000, help="phi evaluation points")
    parser.add_argument("--repeats", type=int, default=5, help="repetitions, best is kept")
    args = parser.parse_args()

    print(f"active backend: {_kernels.backend_name()}")
    if not _kernels.JIT_ENABLED:
        print("numba backend unavailable or disabled; timing the fallback only")

    rows = bench_rk4(args.steps, args.repeats) + bench_phi(args.count, args.repeats)
    width = max(len(name) for name, _ in rows)
    base = {}
    for name, seconds in rows:
        kind = name.split()[0]
        base.setdefault(kind, seconds)
        speedup = base[kind] / seconds
        print(f"{name:<{width}}  {seconds * 1e3:10.2f} ms   x{speedup:.1f}")


if __name__ == "__main__":
    main()
