"""Truncated multivariate power series over the complex numbers.

A :class:`MultiSeries` stores, for an ordered tuple of variable names and a
per-variable degree cap, the dense block of coefficients up to those caps.
Arithmetic is exact modulo truncation: every kept coefficient equals the
coefficient of the exact (untruncated) result.  That is what lets mixed
partial derivatives at the origin be read off as scaled coefficients.

Caps are fixed at construction and all binary operations require identical
variables and caps; this rules out silent truncation-order mismatches when
assembling the moment generating expressions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import convolve


def _shape(caps):
    return tuple(c + 1 for c in caps)


@dataclass(frozen=True)
class MultiSeries:
    vars: tuple[str, ...]
    caps: tuple[int, ...]
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.vars) != len(self.caps):
            raise ValueError("vars and caps must have equal length")
        if any(c < 0 for c in self.caps):
            raise ValueError("caps must be non-negative")
        if self.coeffs.shape != _shape(self.caps):
            raise ValueError(
                f"coefficient block {self.coeffs.shape} does not match caps {self.caps}"
            )

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars, caps):
        return cls(tuple(vars), tuple(caps), np.zeros(_shape(caps), dtype=np.complex128))

    @classmethod
    def constant(cls, vars, caps, value):
        s = cls.zero(vars, caps)
        s.coeffs[(0,) * len(s.caps)] = value
        return s

    @classmethod
    def from_terms(cls, vars, caps, terms):
        """Series from {exponent tuple: coefficient}; exponents above the
        caps are rejected rather than dropped."""
        s = cls.zero(vars, caps)
        for expo, coef in terms.items():
            if len(expo) != len(s.caps):
                raise ValueError(f"exponent tuple {expo} has wrong arity")
            if any(e < 0 or e > c for e, c in zip(expo, s.caps)):
                raise ValueError(f"exponent {expo} outside caps {s.caps}")
            s.coeffs[tuple(expo)] += coef
        return s

    # ---- helpers -------------------------------------------------------

    def _require_same(self, other):
        if not isinstance(other, MultiSeries):
            raise TypeError("expected a MultiSeries")
        if self.vars != other.vars or self.caps != other.caps:
            raise ValueError(
                f"mismatched series: vars/caps {self.vars}/{self.caps} "
                f"vs {other.vars}/{other.caps}"
            )

    def _like(self, coeffs):
        return MultiSeries(self.vars, self.caps, coeffs)

    @property
    def const(self):
        return complex(self.coeffs[(0,) * len(self.caps)])

    # ---- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if np.isscalar(other) or isinstance(other, complex):
            out = self.coeffs.copy()
            out[(0,) * len(self.caps)] += other
            return self._like(out)
        self._require_same(other)
        return self._like(self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultiSeries) else -complex(other))

    def __mul__(self, other):
        if np.isscalar(other) or isinstance(other, complex):
            return self._like(self.coeffs * other)
        self._require_same(other)
        full = convolve(self.coeffs, other.coeffs, mode="full", method="direct")
        sl = tuple(slice(0, c + 1) for c in self.caps)
        return self._like(np.ascontiguousarray(full[sl]))

    __rmul__ = __mul__

    # ---- transcendental operations --------------------------------------

    def exp(self):
        """exp of the series; the constant term is exponentiated exactly and
        the nilpotent remainder summed by Taylor up to total degree sum(caps)."""
        c = self.const
        u = self - c
        total_degree = sum(self.caps)
        acc = MultiSeries.constant(self.vars, self.caps, 1.0)
        term = MultiSeries.constant(self.vars, self.caps, 1.0)
        for k in range(1, total_degree + 1):
            term = term * u * (1.0 / k)
            acc = acc + term
        return acc * complex(np.exp(c))

    def inv_sqrt(self):
        """(self)^(-1/2) by the binomial series; requires constant term 1."""
        if self.const != 1:
            raise ValueError(f"inv_sqrt requires constant term 1, got {self.const}")
        u = self - 1.0
        total_degree = sum(self.caps)
        acc = MultiSeries.constant(self.vars, self.caps, 1.0)
        upow = MultiSeries.constant(self.vars, self.caps, 1.0)
        for k in range(1, total_degree + 1):
            upow = upow * u
            coef = (-0.25) ** k * math.comb(2 * k, k)
            acc = acc + upow * coef
        return acc

    # ---- coefficient extraction ------------------------------------------

    def derivative_at_zero(self, orders) -> complex:
        """Mixed partial derivative at the origin: coefficient times the
        product of order factorials."""
        orders = tuple(orders)
        if len(orders) != len(self.caps):
            raise ValueError(f"orders tuple {orders} has wrong arity")
        if any(o < 0 or o > c for o, c in zip(orders, self.caps)):
            raise ValueError(f"orders {orders} exceed caps {self.caps}")
        scale = 1.0
        for o in orders:
            scale *= math.factorial(o)
        return complex(self.coeffs[orders]) * scale
