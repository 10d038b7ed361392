#!/usr/bin/env python3
"""Timing comparison of the compiled and pure-numpy phase-space kernels.

Evaluates static and thermally evolved quasiprobability values over a
square grid for a few operation counts and prints a table.  The compiled
path is warmed once so compile time is reported separately.
"""

import time

import numpy as np

from catops import _kernels, _kernels_numba
from catops.phasespace import (
    GridSpec, ThermalChannel, _evolved_weights, _static_weights,
)
from catops.state import HermiteArgs, SuperpositionParams, normalization


def bench(fn, *args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    n = 512
    pts = GridSpec.square(5.0, n).points()
    channel = ThermalChannel(0.05, 0.2)
    print(f"grid {n}x{n} ({pts.size} points)\n")
    print(f"{'kernel':<10} {'m':>3} {'numpy':>10} {'numba':>10} {'speedup':>8}")

    # warm the compiled kernels (includes numba compile on first call)
    p = SuperpositionParams(1, np.pi / 3, 0.0, 1 + 1j)
    h = HermiteArgs.from_params(p)
    norm = normalization(p)
    wd, wp = _static_weights(p, norm)
    t0 = time.perf_counter()
    _kernels_numba.wigner_map(pts[:8], p.alpha0, h.ladder, h.direct, h.cross,
                              wd, wp, p.cross_sign)
    we, u_mix, v_width, eps = _evolved_weights(p, channel, norm)
    _kernels_numba.wigner_evolved_map(pts[:8], p.alpha0, h.ladder, h.direct,
                                      h.cross, u_mix, v_width, eps, we,
                                      p.cross_sign)
    warm = time.perf_counter() - t0

    for m in (1, 3, 6):
        p = SuperpositionParams(m, np.pi / 3, 0.0, 1 + 1j)
        h = HermiteArgs.from_params(p)
        norm = normalization(p)
        wd, wp = _static_weights(p, norm)
        args = (pts, p.alpha0, h.ladder, h.direct, h.cross, wd, wp, p.cross_sign)
        t_np = bench(_kernels.wigner_map, *args)
        t_nb = bench(_kernels_numba.wigner_map, *args)
        print(f"{'static':<10} {m:>3} {t_np * 1e3:>8.1f}ms {t_nb * 1e3:>8.1f}ms "
              f"{t_np / t_nb:>7.1f}x")

        we, u_mix, v_width, eps = _evolved_weights(p, channel, norm)
        args = (pts, p.alpha0, h.ladder, h.direct, h.cross,
                u_mix, v_width, eps, we, p.cross_sign)
        t_np = bench(_kernels.wigner_evolved_map, *args)
        t_nb = bench(_kernels_numba.wigner_evolved_map, *args)
        print(f"{'evolved':<10} {m:>3} {t_np * 1e3:>8.1f}ms {t_nb * 1e3:>8.1f}ms "
              f"{t_np / t_nb:>7.1f}x")

    print(f"\ncompile/warm overhead (first call): {warm:.2f}s")


if __name__ == "__main__":
    main()
