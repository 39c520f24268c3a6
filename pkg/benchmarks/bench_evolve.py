"""Time the numba evolve kernel against the numpy fallback.

    python3 benchmarks/bench_evolve.py [--n 128 256 512] [--steps 2000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from rs_maxwell import _kernels
from rs_maxwell.evolve import plane_wave_grid


def best_of(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, nargs="+", default=[128, 256, 512])
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--repeat", type=int, default=3)
    a = p.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba not importable; nothing to compare")

    g = plane_wave_grid(16)
    _kernels.step_all(g.E + 1j * g.cB, g.E, g.cB, g.dx, g.dt, 1, True)  # compile

    print(f"{'n':>6} {'steps':>7} {'numpy s':>10} {'numba s':>10} {'speedup':>8} {'max diff':>10}")
    for n in a.n:
        g = plane_wave_grid(n)
        psi = (g.E + 1j * g.cB).astype(complex)
        args = (psi, g.E, g.cB, g.dx, g.dt, a.steps)
        t_np, r_np = best_of(lambda: _kernels.step_all(*args, use_numba=False), a.repeat)
        t_nb, r_nb = best_of(lambda: _kernels.step_all(*args, use_numba=True), a.repeat)
        diff = max(np.max(np.abs(x - y)) for x, y in zip(r_np, r_nb))
        print(f"{n:>6} {a.steps:>7} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x {diff:>10.2e}")


if __name__ == "__main__":
    main()
