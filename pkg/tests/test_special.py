"""Polynomial special functions: recurrence evaluation pinned to explicit
finite sums and to the classical derivative/contraction identities."""

import math

import numpy as np
import pytest

from catops.special import M_MAX, hermite, hermite2, hermite_all, laguerre


def hermite_sum(m, z):
    """Explicit factorial sum, used only as the test-side oracle."""
    total = 0.0 + 0.0j
    for l in range(m // 2 + 1):
        total += ((-1) ** l * math.factorial(m) * (2 * z) ** (m - 2 * l)
                  / (math.factorial(l) * math.factorial(m - 2 * l)))
    return total


def laguerre_sum(n, x):
    return sum(math.comb(n, k) * (-x) ** k / math.factorial(k) for k in range(n + 1))


def test_hermite_base_cases():
    assert hermite(0, 3.7 - 2j) == 1.0
    assert hermite(1, 2.0) == 4.0
    assert hermite(1, 1 + 1j) == 2 + 2j


def test_hermite_matches_explicit_sum():
    assert hermite(3, 1 + 1j) == pytest.approx(hermite_sum(3, 1 + 1j), rel=1e-12)
    for m in range(16):
        for re in np.linspace(-3, 3, 7):
            for im in np.linspace(-3, 3, 7):
                z = complex(re, im)
                ref = hermite_sum(m, z)
                assert hermite(m, z) == pytest.approx(ref, rel=1e-10, abs=1e-10)


def test_hermite_all_consistent():
    z = np.array([0.3 + 0.1j, -1.2 + 2j])
    table = hermite_all(5, z)
    for m in range(6):
        for i, zi in enumerate(z):
            assert table[m, i] == pytest.approx(hermite(m, zi), rel=1e-14)


def test_hermite_derivative_relation():
    # l-th derivative of H_m equals 2^l m!/(m-l)! H_{m-l}, checked by
    # central finite differences on the real axis
    h = 1e-5
    for m in range(2, 13, 2):
        for x in (-3.0, -0.7, 0.4, 2.9):
            fd = (hermite(m, x + h) - hermite(m, x - h)).real / (2 * h)
            expected = 2 * m * hermite(m - 1, x).real
            assert fd == pytest.approx(expected, rel=1e-6)
            fd2 = (hermite(m, x + h) - 2 * hermite(m, x) + hermite(m, x - h)).real / h ** 2
            expected2 = 4 * m * (m - 1) * hermite(m - 2, x).real
            assert fd2 == pytest.approx(expected2, rel=1e-4, abs=1e-3)


def test_hermite_degree_guard():
    with pytest.raises(ValueError):
        hermite(M_MAX + 1, 0.5)
    with pytest.raises(ValueError):
        hermite(-1, 0.5)
    # opt-in above the default cap
    assert np.isfinite(hermite(M_MAX + 1, 0.5, m_max=128).real)


def test_laguerre_base_cases():
    assert laguerre(0, 0.7 + 0.2j) == 1.0
    assert laguerre(1, 0.25) == pytest.approx(0.75)


def test_laguerre_matches_explicit_sum():
    assert laguerre(4, 2.5) == pytest.approx(laguerre_sum(4, 2.5), rel=1e-12)
    for n in range(12):
        for x in (-1.5, 0.3, 2.0 + 1j, 4.0):
            assert laguerre(n, x) == pytest.approx(laguerre_sum(n, x), rel=1e-9, abs=1e-9)


def test_laguerre_degree_guard():
    with pytest.raises(ValueError):
        laguerre(M_MAX + 1, 1.0)


def test_hermite2_base_and_explicit():
    assert hermite2(0, 0, 2 + 1j, -0.5j) == 1.0
    # (2, 1): the sum has exactly the l = 0 and l = 1 terms z^2 w - 2 z
    z, w = 1.0, 2.0
    assert hermite2(2, 1, z, w) == pytest.approx(z * z * w - 2 * z, abs=1e-12)
    z, w = 0.7 - 0.2j, 1.1 + 0.5j
    assert hermite2(2, 1, z, w) == pytest.approx(z * z * w - 2 * z, rel=1e-12)


def test_hermite2_laguerre_contraction():
    # H_{n,n}(z, conj(z)) = (-1)^n n! L_n(|z|^2)
    for n in range(11):
        for z in (0.3 + 0.4j, 1.2 - 0.7j, 2.0):
            z = complex(z)
            lhs = hermite2(n, n, z, z.conjugate())
            rhs = (-1) ** n * math.factorial(n) * laguerre(n, abs(z) ** 2)
            assert lhs.real == pytest.approx(rhs.real, rel=1e-10, abs=1e-10)
            assert abs(lhs.imag) <= 1e-12 * max(1.0, abs(lhs))


def test_hermite2_realness_on_conjugate_pair():
    rng = np.random.RandomState(7)
    for _ in range(25):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        for n in range(8):
            val = hermite2(n, n, z, z.conjugate())
            assert abs(val.imag) <= 1e-12 * max(1.0, abs(val))
