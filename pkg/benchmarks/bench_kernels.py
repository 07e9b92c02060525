"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Prints the best wall time per kernel and backend, plus the speed-up and the
largest difference between the backends' outputs.
"""
import argparse
import math
import time

import numpy as np

from dicke2p.kernels import available_backends

OMEGA, EPS, N, G = 1.0, 0.0008, 1000.0, 0.49
G_BETA = 0.4693876


def _cases():
    grid = np.linspace(0.0, math.sqrt(N) * (1 - 1e-9), 10_001)
    freq = math.sqrt((OMEGA - 2 * G_BETA) * (OMEGA + 2 * G_BETA))
    dt = 1e-4 * math.pi / freq
    n_steps = int(200.0 / dt)
    return {
        "energy_scan (10001 pts)": lambda k: k.energy_scan(grid, OMEGA, EPS, N, G),
        "golden_section_min": lambda k: k.golden_section_min(18.0, 20.0, 1e-9 * math.sqrt(N), OMEGA, EPS, N, G),
        f"rk4_covariance ({n_steps} steps)": lambda k: k.rk4_covariance(
            0.5, 0.5, 0.0, OMEGA, G_BETA, dt, n_steps, 100
        ),
    }


def _best(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), np.asarray(out, dtype=float)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    backends = available_backends()
    print(f"backends available: {', '.join(backends)}")
    print(f"{'kernel':36s} " + " ".join(f"{b:>12s}" for b in backends) + f" {'speed-up':>9s} {'max diff':>9s}")
    for name, case in _cases().items():
        results = {b: _best(lambda: case(k), args.repeat) for b, k in backends.items()}
        cols = " ".join(f"{results[b][0] * 1e3:10.2f}ms" for b in backends)
        if len(results) == 2:
            speedup = results["python"][0] / results["cython"][0]
            diff = float(np.max(np.abs(results["python"][1] - results["cython"][1])))
            print(f"{name:36s} {cols} {speedup:8.1f}x {diff:9.1e}")
        else:
            print(f"{name:36s} {cols}")


if __name__ == "__main__":
    main()
