"""Closed-form diagnostics of the superposed-operation cat state.

The state is Omega^m applied to a two-component cat, where

    Omega = a cos(theta) + a^dag e^(i phi) sin(theta)

acts m times on |alpha0> - |-alpha0> (odd parity, the default) or on
|alpha0> + |-alpha0> (even parity).  Everything here follows from the
normally ordered form of Omega^m, which turns each expectation value into
finite sums of Hermite polynomials or into low-order coefficient
extractions from truncated power series.

All quantities were cross-validated against the brute-force number-basis
oracle in :mod:`catops.fockoracle`; see ERRATA.md for the places where the
commonly printed closed forms needed a normalization fix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import ConsistencyError, UndefinedQuantity, UnsupportedOperation
from .series import MultiSeries
from .special import hermite

N_MAX = 128  # largest count argument accepted by photocount

_IMAG_TOL = 1e-10


class Parity(str, Enum):
    ODD = "odd"
    EVEN = "even"


@dataclass(frozen=True)
class SuperpositionParams:
    """Defining tuple of the state: operation count m, mixing angle theta,
    relative phase phi, coherent amplitude alpha0, and cat parity."""

    m: int
    theta: float
    phi: float
    alpha0: complex
    parity: Parity = Parity.ODD

    def __post_init__(self):
        if self.m < 0 or int(self.m) != self.m:
            raise ValueError(f"m must be a non-negative integer, got {self.m!r}")
        if not 0.0 < self.theta < math.pi / 2:
            raise ValueError(
                f"theta must lie strictly inside (0, pi/2), got {self.theta!r}"
            )
        if not math.isfinite(self.phi):
            raise ValueError("phi must be finite")
        object.__setattr__(self, "parity", Parity(self.parity))
        object.__setattr__(self, "alpha0", complex(self.alpha0))
        if self.parity is Parity.ODD and self.alpha0 == 0:
            raise ValueError("odd-parity cat vanishes at alpha0 = 0")

    @property
    def cross_sign(self) -> float:
        """Sign with which the opposite-amplitude interference terms enter
        every quadratic expression: -1 for the odd cat, +1 for the even."""
        return -1.0 if self.parity is Parity.ODD else 1.0


@dataclass(frozen=True)
class HermiteArgs:
    """Constants entering every Hermite-sum closed form for one state.

    ``ladder`` and ``drive`` are the coefficients with which the ladder mix
    and the coherent amplitude couple to the generating-function variables;
    ``direct``/``cross`` are the resulting Hermite arguments of the
    same-sign and opposite-sign overlap terms.  All four are derived from a
    single branch of sqrt(2 e^(-i phi) sin cos) so their relative signs stay
    consistent; ladder, drive, direct and cross all flip under
    alpha0 -> -alpha0 except ladder, which is amplitude independent.
    """

    scale: float      # -(1/2) sin(theta) cos(theta); its m-th power weights every sum
    ladder: complex   # amplitude-independent ladder coupling, |ladder|^2 = 2 tan(theta)
    drive: complex    # coherent-amplitude coupling, linear in alpha0
    direct: complex   # Hermite argument of the same-sign overlap terms
    cross: complex    # Hermite argument of the interference terms

    @classmethod
    def from_params(cls, p: SuperpositionParams) -> "HermiteArgs":
        s, c = math.sin(p.theta), math.cos(p.theta)
        root = cmath.sqrt(2.0 * cmath.exp(-1j * p.phi) * s * c)
        ladder = 2j * cmath.exp(-1j * p.phi) * s / root
        # the amplitude couples through the opposite-phase branch of the
        # same root; taking conj(root) rather than an independent sqrt keeps
        # the two coefficients on one sheet for every phi
        drive = 2j * c * p.alpha0 / root.conjugate()
        direct = (ladder * p.alpha0 - drive.conjugate()) / 2.0
        cross = (drive + ladder.conjugate() * p.alpha0.conjugate()) / 2.0
        return cls(scale=-0.5 * s * c, ladder=ladder, drive=drive,
                   direct=direct, cross=cross)


@lru_cache(maxsize=None)
def _fact(n: int) -> int:
    return math.factorial(n)


def _weight(m: int, k: int, tan_theta: float) -> float:
    # (2 tan)^k / k! * (m!/(m-k)!)^2, the combinatorial weight of the k-th
    # contraction in the double generating-function expansion
    return (2.0 * tan_theta) ** k / _fact(k) * float(_fact(m) // _fact(m - k)) ** 2


def _real_with_check(z: complex, what: str) -> float:
    if abs(z.imag) > _IMAG_TOL * (1.0 + abs(z.real)):
        raise ConsistencyError(f"{what}: imaginary residue {z.imag!r} on {z.real!r}")
    return z.real


# ---------------------------------------------------------------------------
# normalization and fidelity
# ---------------------------------------------------------------------------

def normalization(p: SuperpositionParams) -> float:
    """Squared norm of the unnormalized state Omega^m (|a0> -/+ |-a0>)."""
    h = HermiteArgs.from_params(p)
    m = p.m
    tan_theta = math.tan(p.theta)
    e2 = math.exp(-2.0 * abs(p.alpha0) ** 2)
    direct_sum = 0.0
    cross_sum = 0.0
    for k in range(m + 1):
        a_k = _weight(m, k, tan_theta)
        direct_sum += a_k * abs(hermite(m - k, h.direct)) ** 2
        cross_sum += (-1.0) ** k * a_k * abs(hermite(m - k, h.cross)) ** 2
    value = 2.0 * h.scale ** m * (
        (-1.0) ** m * direct_sum + p.cross_sign * e2 * cross_sum
    )
    if not math.isfinite(value) or value <= 0.0:
        raise ConsistencyError(f"normalization came out non-positive: {value!r}")
    return value


def fidelity(p: SuperpositionParams) -> float:
    """Overlap fidelity with the bare (m = 0) odd cat of the same alpha0.

    Vanishes identically for odd m; defined only for odd parity.
    """
    if p.parity is not Parity.ODD:
        raise UnsupportedOperation("fidelity is defined against the odd cat only")
    if p.m % 2 == 1:
        return 0.0
    h = HermiteArgs.from_params(p)
    e2 = math.exp(-2.0 * abs(p.alpha0) ** 2)
    norm0 = 2.0 * (1.0 - e2)
    overlap = hermite(p.m, h.direct.conjugate()) - e2 * hermite(p.m, h.cross)
    # |<bare|state>|^2 / (N_m N_0); (-scale)^m is the squared modulus of the
    # operator-ordering prefactor, and the 4 counts the two equal bra/ket
    # sign pairings of the even-m overlap
    value = (-h.scale) ** p.m * 4.0 * abs(overlap) ** 2 / (normalization(p) * norm0)
    if not 0.0 <= value <= 1.0 + 1e-12:
        raise ConsistencyError(f"fidelity {value!r} outside [0, 1]")
    return min(value, 1.0)


# ---------------------------------------------------------------------------
# photon-number moments
# ---------------------------------------------------------------------------

def mean_photon(p: SuperpositionParams) -> float:
    """<a^dag a>, via the anti-normal moment <a a^dag> minus one."""
    h = HermiteArgs.from_params(p)
    m = p.m
    tan_theta = math.tan(p.theta)
    mag2 = abs(p.alpha0) ** 2
    e2 = math.exp(-2.0 * mag2)
    ladder_amp = h.ladder.conjugate() * p.alpha0.conjugate()
    total = 0.0
    for k in range(m + 1):
        i_k = 2.0 * (-1.0) ** k * _weight(m, k, tan_theta)
        sign_mk = (-1.0) ** (m - k)
        hd = hermite(m - k, h.direct)
        hc = hermite(m - k, h.cross)
        term = sign_mk * (k + 1.0 + mag2) * abs(hd) ** 2
        term += p.cross_sign * (k + 1.0 - mag2) * abs(hc) ** 2 * e2
        if m - k >= 1:
            term += sign_mk * 2.0 * (m - k) * (
                ladder_amp * hd * hermite(m - k - 1, h.direct.conjugate())
            ).real
            term += p.cross_sign * 2.0 * (m - k) * (
                ladder_amp * hermite(m - k, h.cross.conjugate())
                * hermite(m - k - 1, h.cross)
            ).real * e2
        total += i_k * term
    value = h.scale ** m * total / normalization(p) - 1.0
    if not math.isfinite(value):
        raise ConsistencyError("mean photon number is not finite")
    return value


def _quartic_term(p: SuperpositionParams, sign: float, cross: bool) -> complex:
    """One generating-function contribution to <a^2 a^dag^2> with coherent
    amplitude sign*alpha0: the mixed (m, m, 1, 1) derivative of a truncated
    four-variable series.

    The two auxiliary couplings lam/eta are each differentiated exactly
    once, so expanding their resolvent to first order in lam*eta is exact
    under the (.., 1, 1) caps.
    """
    h = HermiteArgs.from_params(p)
    m = p.m
    r = h.ladder
    rc = r.conjugate()
    a0 = sign * p.alpha0
    drive = sign * h.drive
    mag2 = abs(a0) ** 2
    names = ("t", "s", "lam", "eta")
    # caps padded to hold the quadratic exponent terms at small m; extra
    # degrees cannot feed back into the extracted (m, m, 1, 1) coefficient
    mcap = max(m, 2)
    caps = (mcap, mcap, 1, 1)

    def term(d):
        return MultiSeries.from_terms(names, caps, d)

    quad = term({
        (1, 1, 0, 0): -abs(r) ** 2,
        (2, 0, 0, 1): r * r,
        (0, 0, 0, 1): a0.conjugate() ** 2,
        (0, 0, 1, 0): a0 * a0,
        (0, 2, 1, 0): rc * rc,
    })
    if not cross:
        linear = term({
            (1, 0, 0, 0): r * a0,
            (0, 1, 0, 0): -rc * a0.conjugate(),
            (1, 0, 0, 1): 2.0 * r * a0.conjugate(),
            (0, 1, 1, 0): -2.0 * rc * a0,
        })
        outer = term({
            (1, 0, 0, 0): -drive.conjugate(),
            (0, 1, 0, 0): drive,
            (2, 0, 0, 0): -1.0,
            (0, 2, 0, 0): -1.0,
        }) - mag2
        inner = quad + linear + mag2
    else:
        linear = term({
            (1, 0, 0, 0): -r * a0,
            (0, 1, 0, 0): -rc * a0.conjugate(),
            (1, 0, 0, 1): 2.0 * r * a0.conjugate(),
            (0, 1, 1, 0): 2.0 * rc * a0,
        })
        outer = term({
            (1, 0, 0, 0): -drive.conjugate(),
            (0, 1, 0, 0): -drive,
            (2, 0, 0, 0): -1.0,
            (0, 2, 0, 0): -1.0,
        }) - mag2
        inner = quad + linear - mag2
    resolvent = term({(0, 0, 0, 0): 1.0, (0, 0, 1, 1): -4.0})
    inv_root = resolvent.inv_sqrt()          # 1 + 2 lam eta, exact at these caps
    inv = inv_root * inv_root                # 1 + 4 lam eta
    core = (outer + inner * inv).exp() * inv_root
    return h.scale ** m * core.derivative_at_zero((m, m, 1, 1))


def moment_a2ad2(p: SuperpositionParams) -> float:
    """Anti-normally ordered quartic moment <a^2 a^dag^2>."""
    total = _quartic_term(p, 1.0, cross=False) + _quartic_term(p, -1.0, cross=False)
    total += p.cross_sign * (
        _quartic_term(p, 1.0, cross=True) + _quartic_term(p, -1.0, cross=True)
    )
    value = _real_with_check(total / normalization(p), "moment_a2ad2")
    if not math.isfinite(value):
        raise ConsistencyError("quartic moment is not finite")
    return value


def mandel_q(p: SuperpositionParams) -> float:
    """Mandel Q = <a^dag2 a^2>/<n> - <n>; negative values flag
    sub-Poissonian counting statistics."""
    nbar = mean_photon(p)
    if nbar <= 0.0:
        raise UndefinedQuantity("mean photon number vanishes; Q undefined")
    normal_quartic = moment_a2ad2(p) - 4.0 * nbar - 2.0
    q = normal_quartic / nbar - nbar
    if q < -1.0 - 1e-9:
        raise ConsistencyError(f"Mandel Q {q!r} below -1")
    return q


def _pair_creation_term(p: SuperpositionParams, sign: float, cross: bool) -> complex:
    """One generating-function contribution to <a^dag^2> with coherent
    amplitude sign*alpha0: the mixed (m, m) derivative of a two-variable
    series carrying the quadratic prefactor (ladder*t + conj(a0))^2."""
    h = HermiteArgs.from_params(p)
    m = p.m
    r = h.ladder
    a0 = sign * p.alpha0
    direct = sign * h.direct
    cross_arg = sign * h.cross
    names = ("t", "s")
    # t-cap carries the degree-2 prefactor on top of the extraction order
    caps = (m + 2, max(m, 2))

    def term(d):
        return MultiSeries.from_terms(names, caps, d)

    prefactor = term({
        (2, 0): r * r,
        (1, 0): 2.0 * r * a0.conjugate(),
        (0, 0): a0.conjugate() ** 2,
    })
    if not cross:
        expo = term({
            (2, 0): -1.0,
            (0, 2): -1.0,
            (1, 1): -abs(r) ** 2,
            (1, 0): 2.0 * direct,
            (0, 1): -2.0 * direct.conjugate(),
        })
        damp = 1.0
    else:
        expo = term({
            (2, 0): -1.0,
            (0, 2): -1.0,
            (1, 1): -abs(r) ** 2,
            (1, 0): -2.0 * cross_arg.conjugate(),
            (0, 1): -2.0 * cross_arg,
        })
        damp = math.exp(-2.0 * abs(a0) ** 2)
    core = prefactor * expo.exp()
    return h.scale ** m * damp * core.derivative_at_zero((m, m))


def mean_ad2(p: SuperpositionParams) -> complex:
    """<a^dag^2>; the companion first moment <a^dag> vanishes identically."""
    total = _pair_creation_term(p, 1.0, cross=False)
    total += _pair_creation_term(p, -1.0, cross=False)
    total += p.cross_sign * (
        _pair_creation_term(p, 1.0, cross=True)
        + _pair_creation_term(p, -1.0, cross=True)
    )
    return total / normalization(p)


def squeezing(p: SuperpositionParams) -> float:
    """Minimum normally ordered quadrature variance over all quadrature
    angles; values in [-1, 0) certify squeezing.  Uses <a^dag> = 0."""
    s = -2.0 * abs(mean_ad2(p)) + 2.0 * mean_photon(p)
    if s < -1.0 - 1e-9:
        raise ConsistencyError(f"squeezing {s!r} below -1 violates variance positivity")
    return s


# ---------------------------------------------------------------------------
# photocounting
# ---------------------------------------------------------------------------

def photocount(p: SuperpositionParams, xi: float, n: int) -> float:
    """Probability of n detector clicks at efficiency xi in (0, 1].

    xi = 1 is the photon-number distribution and is delegated to the
    number-basis oracle: the closed form has a removable 0/0 there.
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"count must be a non-negative integer, got {n!r}")
    if n > N_MAX:
        raise ValueError(f"count {n} exceeds N_MAX = {N_MAX}")
    if not 0.0 < xi <= 1.0:
        raise ValueError(f"efficiency must lie in (0, 1], got {xi!r}")
    if xi == 1.0:
        from . import fockoracle

        vec = fockoracle.build_state(p, fockoracle.cutoff_select(p, 1e-12))
        return fockoracle.oracle_photocount(vec, 1.0, n) if n <= vec.cutoff else 0.0

    h = HermiteArgs.from_params(p)
    m = p.m
    a0 = p.alpha0
    r = h.ladder
    drive = h.drive
    mix = (1.0 - xi) * r * a0
    arg_plus_t = (drive - mix.conjugate()) / 2.0
    arg_plus_s = (drive.conjugate() - mix) / 2.0
    arg_minus_t = (drive + mix.conjugate()) / 2.0
    arg_minus_s = (drive.conjugate() + mix) / 2.0
    mag2 = abs(a0) ** 2
    e_direct = math.exp(-xi * mag2)
    e_cross = math.exp((xi - 2.0) * mag2)
    total = 0.0 + 0.0j
    for j in range(m + 1):
        lk_max = min(n, m - j)
        for l in range(lk_max + 1):
            ht_direct = hermite(m - l - j, arg_plus_t)
            ht_cross = hermite(m - l - j, arg_minus_t)
            for k in range(lk_max + 1):
                comb = _fact(n) * _fact(m) ** 2
                den = (
                    _fact(j) * _fact(l) * _fact(k)
                    * _fact(n - l) * _fact(n - k)
                    * _fact(m - l - j) * _fact(m - j - k)
                )
                coef = (
                    (-1.0) ** (l + k)
                    * (1.0 - xi) ** j
                    * r.conjugate() ** (j + l) * r ** (j + k)
                    * a0 ** (n - l) * a0.conjugate() ** (n - k)
                    * (comb / den)
                )
                bracket = e_direct * ht_direct * hermite(m - j - k, arg_plus_s)
                bracket += (
                    p.cross_sign
                    * (-1.0) ** (n - k) * (-1.0) ** (m - k - j)
                    * e_cross * ht_cross * hermite(m - j - k, arg_minus_s)
                )
                total += coef * bracket
    value = _real_with_check(
        2.0 * (-h.scale) ** m * xi ** n * total / normalization(p), "photocount"
    )
    if value < -1e-10:
        raise ConsistencyError(f"photocount probability {value!r} is negative")
    return max(value, 0.0)
