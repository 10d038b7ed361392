"""Compiled twins of the phase-space kernels.

Same inputs and same math as :mod:`catops._kernels`, written as explicit
per-point loops for numba.  fastmath stays off so both backends agree to
rounding.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _point_abs2(u, w):
    m = w.size - 1
    acc = w[0]
    if m == 0:
        return acc
    hprev = 1.0 + 0.0j
    h = 2.0 * u
    acc += w[1] * (h.real * h.real + h.imag * h.imag)
    for j in range(1, m):
        hnext = 2.0 * u * h - 2.0 * j * hprev
        hprev = h
        h = hnext
        acc += w[j + 1] * (h.real * h.real + h.imag * h.imag)
    return acc


@njit(cache=True)
def _point_prod(v1, v2, w):
    m = w.size - 1
    acc = w[0] + 0.0j
    if m == 0:
        return acc
    aprev = 1.0 + 0.0j
    bprev = 1.0 + 0.0j
    a = 2.0 * v1
    b = 2.0 * v2
    acc += w[1] * a * b
    for j in range(1, m):
        anext = 2.0 * v1 * a - 2.0 * j * aprev
        bnext = 2.0 * v2 * b - 2.0 * j * bprev
        aprev = a
        bprev = b
        a = anext
        b = bnext
        acc += w[j + 1] * a * b
    return acc


@njit(cache=True)
def wigner_map(points, alpha0, ladder, direct, cross, w_direct, w_primed, cross_sign):
    out = np.empty(points.size, dtype=np.float64)
    a0c = np.conj(alpha0)
    crossc = np.conj(cross)
    directc = np.conj(direct)
    ladderc = np.conj(ladder)
    for i in range(points.size):
        pt = points[i]
        la = ladder * pt
        dplus = pt - alpha0
        dminus = pt + alpha0
        gauss_plus = np.exp(-2.0 * (dplus.real * dplus.real + dplus.imag * dplus.imag))
        gauss_minus = np.exp(-2.0 * (dminus.real * dminus.real + dminus.imag * dminus.imag))
        val = gauss_plus * _point_abs2(-crossc + la, w_direct)
        val += gauss_minus * _point_abs2(crossc + la, w_direct)
        v1 = directc - ladderc * np.conj(pt)
        v2 = direct + la
        mag2 = pt.real * pt.real + pt.imag * pt.imag
        phase = np.exp(complex(-2.0 * mag2, 4.0 * (a0c * pt).imag))
        val += cross_sign * 2.0 * (phase * _point_prod(v1, v2, w_primed)).real
        out[i] = val
    return out


@njit(cache=True)
def wigner_evolved_map(points, alpha0, ladder, direct, cross,
                       u_mix, v_width, eps, w_evolved, cross_sign):
    out = np.empty(points.size, dtype=np.float64)
    a0c = np.conj(alpha0)
    crossc = np.conj(cross)
    directc = np.conj(direct)
    ladderc = np.conj(ladder)
    mixed = ladder * alpha0 * u_mix
    mixedc = ladderc * a0c * u_mix
    mag0 = alpha0.real * alpha0.real + alpha0.imag * alpha0.imag
    for i in range(points.size):
        pt = points[i]
        drift = ladder * pt * (eps * v_width)
        dplus = pt - alpha0 * eps
        dminus = pt + alpha0 * eps
        gauss_plus = np.exp(
            -2.0 * v_width * (dplus.real * dplus.real + dplus.imag * dplus.imag)
        )
        gauss_minus = np.exp(
            -2.0 * v_width * (dminus.real * dminus.real + dminus.imag * dminus.imag)
        )
        val = gauss_plus * _point_abs2(-crossc + mixed + drift, w_evolved)
        val += gauss_minus * _point_abs2(crossc - mixed + drift, w_evolved)
        v1 = -directc + mixedc + ladderc * np.conj(pt) * (eps * v_width)
        v2 = direct - mixed + drift
        mag2 = pt.real * pt.real + pt.imag * pt.imag
        phase = np.exp(complex(
            -2.0 * v_width * mag2 - 2.0 * u_mix * mag0,
            4.0 * v_width * eps * (pt * a0c).imag,
        ))
        val += cross_sign * 2.0 * (phase * _point_prod(v1, v2, w_evolved)).real
        out[i] = val
    return out
