"""Truncated multivariate series: arithmetic exactness under truncation,
the transcendental helpers, and coefficient/derivative extraction."""

import numpy as np
import pytest

from catops.series import MultiSeries


def S(vars, caps, terms):
    return MultiSeries.from_terms(tuple(vars), tuple(caps), terms)


def rand_series(rng, vars, caps):
    coeffs = rng.standard_normal([c + 1 for c in caps]) \
        + 1j * rng.standard_normal([c + 1 for c in caps])
    return MultiSeries(tuple(vars), tuple(caps), coeffs)


def test_add_and_identity():
    a = S("t", (2,), {(0,): 1.0, (1,): 1.0})
    b = S("t", (2,), {(0,): 1.0, (1,): -1.0})
    assert (a + b).coeffs[0] == 2.0
    assert np.all((a + b).coeffs[1:] == 0)
    two = S("ts", (2, 1), {(2, 0): 1.0}) + S("ts", (2, 1), {(0, 1): 1.0})
    assert two.coeffs[2, 0] == 1.0 and two.coeffs[0, 1] == 1.0
    zero = MultiSeries.zero("ts", (2, 1))
    c = rand_series(np.random.RandomState(0), "ts", (2, 1))
    assert np.allclose((c + zero).coeffs, c.coeffs)


def test_add_requires_matching_shape():
    a = MultiSeries.zero("ts", (2, 1))
    b = MultiSeries.zero("tu", (2, 1))
    c = MultiSeries.zero("ts", (3, 1))
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        a + c


def test_mul_examples():
    one_plus_t = S("t", (2,), {(0,): 1.0, (1,): 1.0})
    sq = one_plus_t * one_plus_t
    assert list(sq.coeffs) == [1.0, 2.0, 1.0]
    ts = S("ts", (1, 1), {(1, 0): 1.0}) * S("ts", (1, 1), {(0, 1): 1.0})
    assert ts.coeffs[1, 1] == 1.0
    # truncated Cauchy product: (1+2t+3t^2)(4+5t) keeps degrees <= 2
    a = S("t", (2,), {(0,): 1.0, (1,): 2.0, (2,): 3.0})
    b = S("t", (2,), {(0,): 4.0, (1,): 5.0})
    assert list((a * b).coeffs) == [4.0, 13.0, 22.0]


def test_ring_axioms_random():
    rng = np.random.RandomState(3)
    for caps in [(2,), (3, 2), (2, 1, 2)]:
        vars = "tsu"[:len(caps)]
        a, b, c = (rand_series(rng, vars, caps) for _ in range(3))
        assert np.allclose(((a * b) * c).coeffs, (a * (b * c)).coeffs)
        assert np.allclose((a * b).coeffs, (b * a).coeffs)
        assert np.allclose((a * (b + c)).coeffs, (a * b + a * c).coeffs)


def test_exp_examples():
    assert MultiSeries.zero("t", (3,)).exp().coeffs[0] == 1.0
    t = S("t", (3,), {(1,): 1.0})
    assert np.allclose(t.exp().coeffs, [1.0, 1.0, 0.5, 1.0 / 6.0])
    # coefficient of t^2 s in exp(2t + s) is 2^2/2! * 1 = 2
    e = S("ts", (2, 1), {(1, 0): 2.0, (0, 1): 1.0}).exp()
    assert e.coeffs[2, 1] == pytest.approx(2.0, rel=1e-14)


def test_exp_constant_term():
    a = S("t", (2,), {(0,): 1.5, (1,): 1.0})
    e = a.exp()
    assert e.coeffs[0] == pytest.approx(np.exp(1.5), rel=1e-14)
    assert e.coeffs[1] == pytest.approx(np.exp(1.5), rel=1e-14)


def test_exp_homomorphism_random():
    rng = np.random.RandomState(11)
    for caps in [(3,), (2, 2)]:
        vars = "ts"[:len(caps)]
        a = rand_series(rng, vars, caps) * 0.3
        b = rand_series(rng, vars, caps) * 0.3
        lhs = (a + b).exp().coeffs
        rhs = (a.exp() * b.exp()).coeffs
        assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


def test_inv_sqrt_examples():
    one = MultiSeries.constant("t", (2,), 1.0)
    assert np.allclose(one.inv_sqrt().coeffs, [1.0, 0.0, 0.0])
    # (1 - 4 lam eta)^(-1/2) = 1 + 2 lam eta at first order in each
    r = S(("lam", "eta"), (1, 1), {(0, 0): 1.0, (1, 1): -4.0}).inv_sqrt()
    assert r.coeffs[1, 1] == pytest.approx(2.0)
    # (1 - 2t)^(-1/2) = 1 + t + (3/2) t^2 + ...
    r = S("t", (2,), {(0,): 1.0, (1,): -2.0}).inv_sqrt()
    assert np.allclose(r.coeffs, [1.0, 1.0, 1.5])


def test_inv_sqrt_squares_back():
    rng = np.random.RandomState(5)
    a = rand_series(rng, "ts", (3, 2)) * 0.2
    a = a - a.const + 1.0
    r = a.inv_sqrt()
    assert np.allclose((a * r * r).coeffs, MultiSeries.constant("ts", (3, 2), 1.0).coeffs,
                       atol=1e-12)


def test_inv_sqrt_requires_unit_constant():
    with pytest.raises(ValueError):
        S("t", (2,), {(0,): 2.0}).inv_sqrt()


def test_derivative_at_zero():
    t2 = S("t", (3,), {(2,): 1.0})
    assert t2.derivative_at_zero((2,)) == 2.0
    e = S("ts", (1, 1), {(1, 1): 2.0}).exp()
    assert e.derivative_at_zero((1, 1)) == pytest.approx(2.0)
    r = S(("lam", "eta"), (1, 1), {(0, 0): 1.0, (1, 1): -4.0}).inv_sqrt()
    assert r.derivative_at_zero((1, 1)) == pytest.approx(2.0)
    # d^k/dt^k exp(c t) at 0 is c^k
    c = 0.7 - 0.3j
    e = S("t", (4,), {(1,): c}).exp()
    for k in range(5):
        assert e.derivative_at_zero((k,)) == pytest.approx(c ** k, rel=1e-12)


def test_derivative_guards():
    a = MultiSeries.zero("ts", (2, 1))
    with pytest.raises(ValueError):
        a.derivative_at_zero((3, 0))
    with pytest.raises(ValueError):
        a.derivative_at_zero((1,))


def test_from_terms_guards():
    with pytest.raises(ValueError):
        S("t", (2,), {(3,): 1.0})
    with pytest.raises(ValueError):
        S("t", (2,), {(0, 0): 1.0})
