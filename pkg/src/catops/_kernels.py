"""Pure-numpy evaluation kernels for the phase-space hot loops.

These are the reference implementations; :mod:`catops._kernels_numba`
mirrors them with compiled per-point loops.  Both operate on flat
complex128 point arrays and precomputed weight vectors so the two backends
share all the combinatorial setup.
"""

from __future__ import annotations

import numpy as np


def _sum_abs2(u, w):
    """sum_j w[j] |H_j(u)|^2 accumulated along the Hermite recurrence."""
    m = len(w) - 1
    acc = np.full(u.shape, w[0])
    if m == 0:
        return acc
    hprev = np.ones_like(u)
    h = 2.0 * u
    acc = acc + w[1] * (h.real ** 2 + h.imag ** 2)
    for j in range(1, m):
        hprev, h = h, 2.0 * u * h - 2.0 * j * hprev
        acc += w[j + 1] * (h.real ** 2 + h.imag ** 2)
    return acc


def _sum_prod(v1, v2, w):
    """sum_j w[j] H_j(v1) H_j(v2), complex."""
    m = len(w) - 1
    acc = np.full(v1.shape, w[0], dtype=np.complex128)
    if m == 0:
        return acc
    aprev = np.ones_like(v1)
    bprev = np.ones_like(v2)
    a = 2.0 * v1
    b = 2.0 * v2
    acc = acc + w[1] * a * b
    for j in range(1, m):
        aprev, a = a, 2.0 * v1 * a - 2.0 * j * aprev
        bprev, b = b, 2.0 * v2 * b - 2.0 * j * bprev
        acc += w[j + 1] * a * b
    return acc


def wigner_map(points, alpha0, ladder, direct, cross, w_direct, w_primed, cross_sign):
    """Static quasiprobability values at the given phase-space points."""
    pts = np.asarray(points, dtype=np.complex128)
    u_plus = -np.conjugate(cross) + ladder * pts
    u_minus = np.conjugate(cross) + ladder * pts
    gauss_plus = np.exp(-2.0 * np.abs(pts - alpha0) ** 2)
    gauss_minus = np.exp(-2.0 * np.abs(pts + alpha0) ** 2)
    out = gauss_plus * _sum_abs2(u_plus, w_direct)
    out += gauss_minus * _sum_abs2(u_minus, w_direct)
    v1 = np.conjugate(direct) - np.conjugate(ladder) * np.conjugate(pts)
    v2 = direct + ladder * pts
    phase = np.exp(
        -2.0 * np.abs(pts) ** 2
        + 4j * (np.conjugate(alpha0) * pts).imag
    )
    out += cross_sign * 2.0 * (phase * _sum_prod(v1, v2, w_primed)).real
    return out


def wigner_evolved_map(points, alpha0, ladder, direct, cross,
                       u_mix, v_width, eps, w_evolved, cross_sign):
    """Thermally evolved quasiprobability values at the given points."""
    pts = np.asarray(points, dtype=np.complex128)
    drift = ladder * pts * (eps * v_width)
    u_plus = -np.conjugate(cross) + ladder * alpha0 * u_mix + drift
    u_minus = np.conjugate(cross) - ladder * alpha0 * u_mix + drift
    gauss_plus = np.exp(-2.0 * v_width * np.abs(pts - alpha0 * eps) ** 2)
    gauss_minus = np.exp(-2.0 * v_width * np.abs(pts + alpha0 * eps) ** 2)
    out = gauss_plus * _sum_abs2(u_plus, w_evolved)
    out += gauss_minus * _sum_abs2(u_minus, w_evolved)
    v1 = (
        -np.conjugate(direct)
        + np.conjugate(ladder) * np.conjugate(alpha0) * u_mix
        + np.conjugate(ladder) * np.conjugate(pts) * (eps * v_width)
    )
    v2 = direct - ladder * alpha0 * u_mix + drift
    mag0 = abs(alpha0) ** 2
    phase = np.exp(
        -2.0 * v_width * np.abs(pts) ** 2
        - 2.0 * u_mix * mag0
        + 4j * v_width * eps * (pts * np.conjugate(alpha0)).imag
    )
    out += cross_sign * 2.0 * (phase * _sum_prod(v1, v2, w_evolved)).real
    return out
