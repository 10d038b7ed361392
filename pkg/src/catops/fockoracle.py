"""Brute-force number-basis ground truth.

Everything here is built from elementary constructions only (ladder
matrices, truncated matrix exponentials, Bernoulli detection sums, RK4) so
it can arbitrate sign and normalization questions in the closed forms.
No code is shared with the closed-form paths.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.sparse import diags as sparse_diags
from scipy.sparse.linalg import expm_multiply
from scipy.stats import binom

from .errors import (
    ConsistencyError,
    CutoffTooSmall,
    IntegrationError,
    ResourceLimit,
)
from .state import Parity, SuperpositionParams

_TAIL_FRACTION = 1e-14  # max relative weight allowed in the top level


@dataclass(frozen=True)
class FockVector:
    """Truncated number-basis ket; amps[n] multiplies |n>, n <= cutoff."""

    cutoff: int
    amps: np.ndarray

    def __post_init__(self):
        if self.cutoff <= 0:
            raise ValueError("cutoff must be positive")
        if self.amps.shape != (self.cutoff + 1,):
            raise ValueError("amplitude array does not match cutoff")

    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def normalized(self) -> np.ndarray:
        return self.amps / math.sqrt(self.norm_sq())

    def check_tail(self) -> None:
        total = self.norm_sq()
        if total == 0.0:
            raise ConsistencyError("state vector is identically zero")
        # top two levels: parity-sparse states have an exactly zero top level
        top = max(abs(self.amps[self.cutoff]) ** 2,
                  abs(self.amps[self.cutoff - 1]) ** 2)
        if top > _TAIL_FRACTION * total:
            raise CutoffTooSmall(
                f"top-level weight exceeds {_TAIL_FRACTION} of the norm at "
                f"cutoff {self.cutoff}"
            )

    def to_json(self) -> str:
        interleaved = np.empty(2 * (self.cutoff + 1))
        interleaved[0::2] = self.amps.real
        interleaved[1::2] = self.amps.imag
        return json.dumps({"cutoff": self.cutoff, "amps": interleaved.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "FockVector":
        doc = json.loads(text)
        flat = np.asarray(doc["amps"], dtype=float)
        return cls(int(doc["cutoff"]), flat[0::2] + 1j * flat[1::2])


@dataclass(frozen=True)
class FockDensity:
    """Truncated number-basis density matrix, trace-normalized."""

    cutoff: int
    matrix: np.ndarray

    def __post_init__(self):
        n = self.cutoff + 1
        if self.matrix.shape != (n, n):
            raise ValueError("matrix does not match cutoff")

    @classmethod
    def from_vector(cls, vec: FockVector) -> "FockDensity":
        amps = vec.normalized()
        return cls(vec.cutoff, np.outer(amps, amps.conjugate()))

    def check_invariants(self) -> None:
        herm = np.max(np.abs(self.matrix - self.matrix.conjugate().T))
        if herm > 1e-12:
            raise ConsistencyError(f"density matrix non-Hermitian by {herm}")
        tr = np.trace(self.matrix)
        if abs(tr - 1.0) > 1e-10:
            raise ConsistencyError(f"trace {tr} deviates from 1")
        if float(np.min(self.matrix.diagonal().real)) < -1e-10:
            raise ConsistencyError("negative diagonal weight")

    def to_json(self) -> str:
        flat = self.matrix.reshape(-1)
        interleaved = np.empty(2 * flat.size)
        interleaved[0::2] = flat.real
        interleaved[1::2] = flat.imag
        return json.dumps({"cutoff": self.cutoff, "matrix": interleaved.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "FockDensity":
        doc = json.loads(text)
        flat = np.asarray(doc["matrix"], dtype=float)
        z = flat[0::2] + 1j * flat[1::2]
        n = int(doc["cutoff"]) + 1
        return cls(int(doc["cutoff"]), z.reshape(n, n))


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _apply_lower(v: np.ndarray) -> np.ndarray:
    n = np.arange(1, v.size)
    out = np.zeros_like(v)
    out[:-1] = np.sqrt(n) * v[1:]
    return out


def _apply_raise(v: np.ndarray) -> np.ndarray:
    n = np.arange(1, v.size)
    out = np.zeros_like(v)
    out[1:] = np.sqrt(n) * v[:-1]
    return out


def coherent_vector(alpha: complex, cutoff: int) -> FockVector:
    """Coherent state |alpha> truncated at cutoff (no parity combination)."""
    amps = np.zeros(cutoff + 1, dtype=np.complex128)
    amps[0] = math.exp(-abs(alpha) ** 2 / 2.0)
    for n in range(cutoff):
        amps[n + 1] = amps[n] * alpha / math.sqrt(n + 1)
    vec = FockVector(cutoff, amps)
    vec.check_tail()
    return vec


def build_state(p: SuperpositionParams, cutoff: int) -> FockVector:
    """Unnormalized superposed-operation cat in the number basis.

    The cat amplitudes are combined first, then the mixing operator
    a cos + a^dag e^(i phi) sin is applied m times as ladder sweeps.
    """
    amps = np.zeros(cutoff + 1, dtype=np.complex128)
    amps[0] = math.exp(-abs(p.alpha0) ** 2 / 2.0)
    for n in range(cutoff):
        amps[n + 1] = amps[n] * p.alpha0 / math.sqrt(n + 1)
    parity_sign = -1.0 if p.parity is Parity.ODD else 1.0
    signs = np.ones(cutoff + 1)
    signs[1::2] = -1.0
    amps = amps + parity_sign * signs * amps
    cos_t = math.cos(p.theta)
    sin_phase = math.sin(p.theta) * np.exp(1j * p.phi)
    for _ in range(p.m):
        amps = cos_t * _apply_lower(amps) + sin_phase * _apply_raise(amps)
    vec = FockVector(cutoff, amps)
    vec.check_tail()
    return vec


_CUTOFF_LADDER = (32, 64, 128, 256, 512, 1024, 2048)


def cutoff_select(p: SuperpositionParams, tol: float) -> int:
    """Smallest cutoff from the doubling ladder whose top 8 amplitudes
    carry relative weight below tol."""
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    for cutoff in _CUTOFF_LADDER:
        try:
            vec = build_state(p, cutoff)
        except CutoffTooSmall:
            continue
        weights = np.abs(vec.amps) ** 2
        if weights[-8:].sum() < tol * weights.sum():
            return cutoff
    raise ResourceLimit(f"no adequate cutoff up to {_CUTOFF_LADDER[-1]}")


# ---------------------------------------------------------------------------
# observables
# ---------------------------------------------------------------------------

def oracle_moment(vec: FockVector, j: int, k: int) -> complex:
    """<a^dag^j a^k> under the normalized state, by direct ladder action."""
    if j < 0 or k < 0:
        raise ValueError("moment orders must be non-negative")
    if j + k > vec.cutoff / 2:
        raise ValueError(f"moment order {j}+{k} too high for cutoff {vec.cutoff}")
    amps = vec.normalized()
    left = amps.copy()
    for _ in range(j):
        left = _apply_lower(left)
    right = amps.copy()
    for _ in range(k):
        right = _apply_lower(right)
    return complex(np.vdot(left, right))


def oracle_antinormal_quartic(vec: FockVector) -> float:
    """<a^2 a^dag^2> as the squared norm of the doubly raised state."""
    amps = vec.normalized()
    # raising twice needs two empty top levels; the tail check guarantees
    # the lost weight is negligible
    raised = _apply_raise(_apply_raise(amps))
    return float(np.vdot(raised, raised).real)


def oracle_photocount(vec: FockVector, xi: float, n: int) -> float:
    """Bernoulli detection: P(n) = sum_k C(k, n) xi^n (1-xi)^(k-n) |c_k|^2."""
    if not 0.0 < xi <= 1.0:
        raise ValueError(f"efficiency must lie in (0, 1], got {xi!r}")
    if n > vec.cutoff:
        raise ValueError(f"count {n} exceeds cutoff {vec.cutoff}")
    probs = np.abs(vec.normalized()) ** 2
    if xi == 1.0:
        return float(probs[n])
    ks = np.arange(n, vec.cutoff + 1)
    return float(np.sum(binom.pmf(n, ks, xi) * probs[n:]))


def displacement_matrix(alpha: complex, cutoff: int) -> np.ndarray:
    """D(alpha) = exp(alpha a^dag - conj(alpha) a), truncated then
    exponentiated by scaling and squaring (reference path)."""
    n = np.sqrt(np.arange(1, cutoff + 1))
    gen = np.zeros((cutoff + 1, cutoff + 1), dtype=np.complex128)
    gen[np.arange(1, cutoff + 1), np.arange(cutoff)] = alpha * n
    gen[np.arange(cutoff), np.arange(1, cutoff + 1)] = -np.conjugate(alpha) * n
    return expm(gen)


def _displacement_generator(alpha: complex, cutoff: int):
    n = np.sqrt(np.arange(1, cutoff + 1))
    return sparse_diags([alpha * n, -np.conjugate(alpha) * n], [-1, 1], format="csr")


def displace_block(alpha: complex, block: np.ndarray) -> np.ndarray:
    """Action of D(alpha) on a vector or column block, by scaled truncated
    Taylor application of the tridiagonal generator (agrees with the dense
    scaling-and-squaring matrix to rounding; see the oracle tests)."""
    cutoff = block.shape[0] - 1
    if alpha == 0:
        return block.astype(np.complex128, copy=True)
    return expm_multiply(_displacement_generator(alpha, cutoff),
                         block.astype(np.complex128, copy=False))


def _check_displacement(alpha: complex, cutoff: int) -> complex:
    alpha = complex(alpha)
    if abs(alpha) > math.sqrt(cutoff) / 2.0:
        raise ValueError(
            f"|alpha| = {abs(alpha):.3f} not representable at cutoff {cutoff}"
        )
    return alpha


def oracle_wigner(vec: FockVector, alpha: complex) -> float:
    """Quasiprobability value at alpha via the displaced-parity identity
    W(alpha) = (2/pi) <D(alpha) P D(alpha)^dag>."""
    alpha = _check_displacement(alpha, vec.cutoff)
    displaced = displace_block(-alpha, vec.normalized())
    tail = np.abs(displaced[-4:]) ** 2
    if tail.sum() > 1e-10:
        raise CutoffTooSmall("displaced state leaks into the top levels")
    parity = np.ones(vec.cutoff + 1)
    parity[1::2] = -1.0
    return float(2.0 / math.pi * np.sum(parity * np.abs(displaced) ** 2))


def _density_factor(rho: FockDensity, tol: float = 1e-14) -> np.ndarray:
    """Column block B with rho = B B^dag, from the eigendecomposition with
    negligible eigenvalues dropped."""
    vals, vecs = np.linalg.eigh(rho.matrix)
    keep = vals > tol
    return vecs[:, keep] * np.sqrt(vals[keep])


def oracle_wigner_density(rho: FockDensity, alpha: complex) -> float:
    """Displaced-parity value for a density matrix."""
    return oracle_wigner_density_grid(rho, [alpha])[0]


def oracle_wigner_density_grid(rho: FockDensity, points) -> np.ndarray:
    """Displaced-parity values at many points; the density matrix is
    factored once and each point displaces the factor block."""
    block = _density_factor(rho)
    parity = np.ones(rho.cutoff + 1)
    parity[1::2] = -1.0
    out = np.empty(len(points))
    for i, alpha in enumerate(points):
        alpha = _check_displacement(alpha, rho.cutoff)
        moved = displace_block(-alpha, block)
        out[i] = 2.0 / math.pi * float(parity @ np.sum(np.abs(moved) ** 2, axis=1))
    return out


# ---------------------------------------------------------------------------
# dissipative evolution
# ---------------------------------------------------------------------------

def min_steps(kappa_t: float, nbar: float, cutoff: int) -> int:
    """Smallest step count satisfying the stiffness guard
    kappa*dt*(2 nbar + 1)*cutoff <= 0.1."""
    if kappa_t == 0.0:
        return 0
    return max(1, math.ceil(kappa_t * (2.0 * nbar + 1.0) * cutoff / 0.1))


def evolve_master(rho: FockDensity, channel, steps: int) -> FockDensity:
    """Fixed-step RK4 integration of the damped-cavity master equation

        drho/d(kt) = (nbar+1)(2 a rho a+ - a+a rho - rho a+a)
                     + nbar (2 a+ rho a - a a+ rho - rho a a+)

    over the dimensionless interval channel.kappa_t.
    """
    kappa_t = channel.kappa_t
    nbar = channel.nbar
    if kappa_t == 0.0 or steps == 0:
        if kappa_t != 0.0:
            raise ValueError("steps = 0 is only valid for kappa_t = 0")
        return rho
    if steps < min_steps(kappa_t, nbar, rho.cutoff):
        raise ValueError(
            f"steps {steps} violates the stiffness guard; need at least "
            f"{min_steps(kappa_t, nbar, rho.cutoff)}"
        )
    dim = rho.cutoff + 1
    n = np.sqrt(np.arange(1, dim))
    a = np.zeros((dim, dim), dtype=np.complex128)
    a[np.arange(dim - 1), np.arange(1, dim)] = n
    ad = a.conjugate().T
    ad_a = ad @ a
    a_ad = a @ ad

    def rhs(r):
        down = 2.0 * (a @ r @ ad) - ad_a @ r - r @ ad_a
        up = 2.0 * (ad @ r @ a) - a_ad @ r - r @ a_ad
        return (nbar + 1.0) * down + nbar * up

    h = kappa_t / steps
    r = rho.matrix.copy()
    trace0 = float(np.trace(r).real)
    for _ in range(steps):
        k1 = rhs(r)
        k2 = rhs(r + 0.5 * h * k1)
        k3 = rhs(r + 0.5 * h * k2)
        k4 = rhs(r + h * k3)
        r = r + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    drift = abs(float(np.trace(r).real) - trace0)
    if drift > 1e-6:
        raise IntegrationError(
            f"trace drifted by {drift:.2e}; increase the step count"
        )
    # symmetrize away the last-ulp Hermiticity residue
    r = 0.5 * (r + r.conjugate().T)
    return FockDensity(rho.cutoff, r)
