"""Stable evaluation of the polynomial special functions used by the
closed-form expressions: physicists' Hermite polynomials of complex
argument, Laguerre polynomials, and the two-index Hermite polynomials.

All three are evaluated for indices up to ``M_MAX`` (default 64).  Beyond
that the factorial-weighted prefactors they get multiplied with elsewhere
leave double precision, so larger indices require an explicit opt-in via
the ``m_max`` keyword.

Evaluation is by three-term recurrence, not by the explicit factorial sum:
the sum cancels catastrophically for degree >~ 20 while the recurrence stays
accurate on the argument ranges that occur here.
"""

from __future__ import annotations

import math

import numpy as np

M_MAX = 64


def _check_degree(n: int, m_max: int, name: str) -> None:
    if n < 0 or n != int(n):
        raise ValueError(f"{name} degree must be a non-negative integer, got {n!r}")
    if n > m_max:
        raise ValueError(f"{name} degree {n} exceeds limit {m_max}")


def hermite(m: int, z: complex, *, m_max: int = M_MAX) -> complex:
    """Physicists' Hermite polynomial H_m(z) for complex z.

    Uses H_{k+1} = 2 z H_k - 2 k H_{k-1}.
    """
    _check_degree(m, m_max, "hermite")
    z = complex(z)
    if m == 0:
        return 1.0 + 0.0j
    hkm1 = 1.0 + 0.0j
    hk = 2.0 * z
    for k in range(1, m):
        hkm1, hk = hk, 2.0 * z * hk - 2.0 * k * hkm1
    return hk


def hermite_all(m: int, z, *, m_max: int = M_MAX):
    """H_0(z) .. H_m(z) in one sweep; z may be a complex ndarray.

    Returns an array of shape (m+1,) + shape(z).
    """
    _check_degree(m, m_max, "hermite")
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty((m + 1,) + z.shape, dtype=np.complex128)
    out[0] = 1.0
    if m >= 1:
        out[1] = 2.0 * z
    for k in range(1, m):
        out[k + 1] = 2.0 * z * out[k] - 2.0 * k * out[k - 1]
    return out


def laguerre(n: int, x: complex, *, m_max: int = M_MAX) -> complex:
    """Laguerre polynomial L_n(x) for complex x.

    Uses (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
    """
    _check_degree(n, m_max, "laguerre")
    x = complex(x)
    if n == 0:
        return 1.0 + 0.0j
    lkm1 = 1.0 + 0.0j
    lk = 1.0 - x
    for k in range(1, n):
        lkm1, lk = lk, ((2.0 * k + 1.0 - x) * lk - k * lkm1) / (k + 1.0)
    return lk


def hermite2(m: int, n: int, z: complex, w: complex, *, m_max: int = M_MAX) -> complex:
    """Two-index Hermite polynomial

        H_{m,n}(z, w) = sum_l (-1)^l m! n! z^(m-l) w^(n-l) / (l! (m-l)! (n-l)!)

    with l running to min(m, n).  The degrees stay small enough here that
    the explicit sum is exact; terms are accumulated from l = 0 upward with
    an incrementally updated coefficient.
    """
    _check_degree(m, m_max, "hermite2")
    _check_degree(n, m_max, "hermite2")
    z = complex(z)
    w = complex(w)
    total = 0.0 + 0.0j
    # coefficient of the l-th term: (-1)^l m! n! / (l! (m-l)! (n-l)!)
    for l in range(min(m, n) + 1):
        coef = (-1) ** l * math.factorial(m) * math.factorial(n) // (
            math.factorial(l) * math.factorial(m - l) * math.factorial(n - l)
        )
        total += coef * z ** (m - l) * w ** (n - l)
    return total
