"""Phase-space view of the state: quasiprobability values on points and
grids, the negative-volume nonclassicality measure, and the closed-form
thermal-channel evolution.

Grid evaluation is the package's hot loop; the per-point math lives in
:mod:`catops._kernels` (numpy) and :mod:`catops._kernels_numba` (compiled),
selected through :mod:`catops.backend`.
"""

from __future__ import annotations

import io
import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import ConsistencyError, ConvergenceError
from .special import M_MAX
from .state import HermiteArgs, SuperpositionParams, _fact, normalization


@dataclass(frozen=True)
class GridSpec:
    """Rectangular phase-space window with sample counts; samples sit at
    cell centers so plain Riemann sums are midpoint-rule accurate."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("grid bounds must be ordered")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("need at least 2 samples per axis")

    @classmethod
    def square(cls, half_width: float, n: int) -> "GridSpec":
        return cls(-half_width, half_width, -half_width, half_width, n, n)

    @property
    def cell_area(self) -> float:
        return ((self.re_max - self.re_min) / self.nx) * (
            (self.im_max - self.im_min) / self.ny
        )

    def re_centers(self) -> np.ndarray:
        h = (self.re_max - self.re_min) / self.nx
        return self.re_min + h * (np.arange(self.nx) + 0.5)

    def im_centers(self) -> np.ndarray:
        h = (self.im_max - self.im_min) / self.ny
        return self.im_min + h * (np.arange(self.ny) + 0.5)

    def points(self) -> np.ndarray:
        """Flattened complex sample points, re index outermost."""
        re = self.re_centers()
        im = self.im_centers()
        return (re[:, None] + 1j * im[None, :]).reshape(-1)


@dataclass(frozen=True)
class WignerGrid:
    spec: GridSpec
    values: np.ndarray  # shape (nx, ny), real

    def __post_init__(self):
        if self.values.shape != (self.spec.nx, self.spec.ny):
            raise ValueError("value block does not match the grid spec")
        if not np.all(np.isfinite(self.values)):
            raise ConsistencyError("grid contains non-finite values")

    def riemann_total(self) -> float:
        return float(self.values.sum() * self.spec.cell_area)

    def min_value(self) -> float:
        return float(self.values.min())

    def write_csv(self, stream) -> None:
        re = self.spec.re_centers()
        im = self.spec.im_centers()
        stream.write("re,im,w\n")
        for i in range(self.spec.nx):
            row = self.values[i]
            re_s = repr(float(re[i]))
            for j in range(self.spec.ny):
                stream.write(f"{re_s},{repr(float(im[j]))},{repr(float(row[j]))}\n")

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    def to_json(self) -> str:
        s = self.spec
        return json.dumps({
            "re_min": s.re_min, "re_max": s.re_max,
            "im_min": s.im_min, "im_max": s.im_max,
            "nx": s.nx, "ny": s.ny,
            "values": [float(v) for v in self.values.reshape(-1)],
        })

    @classmethod
    def from_json(cls, text: str) -> "WignerGrid":
        doc = json.loads(text)
        spec = GridSpec(doc["re_min"], doc["re_max"], doc["im_min"], doc["im_max"],
                        int(doc["nx"]), int(doc["ny"]))
        vals = np.asarray(doc["values"], dtype=float).reshape(spec.nx, spec.ny)
        return cls(spec, vals)


@dataclass(frozen=True)
class ThermalChannel:
    """Damped-cavity channel: dimensionless elapsed time kappa_t and bath
    occupation nbar."""

    kappa_t: float
    nbar: float

    def __post_init__(self):
        if self.kappa_t < 0.0:
            raise ValueError("kappa_t must be non-negative")
        if self.nbar < 0.0:
            raise ValueError("nbar must be non-negative")

    @property
    def gamma(self) -> float:
        """Mixing fraction 1 - e^(-2 kappa_t) in [0, 1)."""
        return -math.expm1(-2.0 * self.kappa_t)


def thermal_wigner(nbar: float, gamma_pt: complex) -> float:
    """Fixed point of the channel: the thermal-state quasiprobability."""
    width = 2.0 * nbar + 1.0
    return 2.0 / (math.pi * width) * math.exp(-2.0 * abs(gamma_pt) ** 2 / width)


# ---------------------------------------------------------------------------
# weight precomputation
# ---------------------------------------------------------------------------

def _check_order(p: SuperpositionParams) -> None:
    if p.m > M_MAX:
        raise ValueError(f"operation count {p.m} exceeds supported limit {M_MAX}")


def _static_weights(p: SuperpositionParams, norm: float):
    """Degree-indexed weights of the |H_j|^2 and H_j H_j sums in the static
    quasiprobability; index j is the Hermite degree m - k."""
    m = p.m
    s, c = math.sin(p.theta), math.cos(p.theta)
    base = 2.0 / (math.pi * norm) * (0.5 * s * c) ** m
    tan_t = s / c
    d = np.empty(m + 1)
    for k in range(m + 1):
        d[k] = base * (2.0 * tan_t) ** k / _fact(k) * float(_fact(m) // _fact(m - k)) ** 2
    w_direct = np.empty(m + 1)
    w_primed = np.empty(m + 1)
    for j in range(m + 1):
        w_direct[j] = d[m - j] * (-1.0) ** (m - j)
        w_primed[j] = d[m - j] * (-1.0) ** m
    return w_direct, w_primed


def _evolved_weights(p: SuperpositionParams, ch: ThermalChannel, norm: float):
    """Degree-indexed weights for the evolved sums, plus the channel
    constants (u_mix, v_width, eps)."""
    m = p.m
    s, c = math.sin(p.theta), math.cos(p.theta)
    eps = math.exp(-ch.kappa_t)
    v_width = 1.0 / (2.0 * ch.nbar * ch.gamma + 1.0)
    u_mix = 1.0 - eps * eps * v_width
    base = 2.0 / (math.pi * norm)
    w = np.zeros(m + 1)
    for k in range(m + 1):
        for l in range(m - k + 1):
            j = m - k - l
            coef = (
                base
                * (-1.0) ** k
                * 2.0 ** (2 * l + k - m)
                * float(_fact(m)) ** 2
                / (_fact(k) * _fact(l) * float(_fact(j)) ** 2)
                * s ** (k + l + m) * c ** (m - k - l)
            )
            w[j] += coef * v_width * u_mix ** l
    return w, u_mix, v_width, eps


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def wigner_values(p: SuperpositionParams, points) -> np.ndarray:
    """Static quasiprobability at an array of complex points."""
    _check_order(p)
    h = HermiteArgs.from_params(p)
    w_direct, w_primed = _static_weights(p, normalization(p))
    pts = np.ascontiguousarray(np.asarray(points, dtype=np.complex128).reshape(-1))
    out = backend.kernels().wigner_map(
        pts, complex(p.alpha0), complex(h.ladder), complex(h.direct),
        complex(h.cross), w_direct, w_primed, p.cross_sign,
    )
    out = np.asarray(out).reshape(np.shape(points))
    if not np.all(np.isfinite(out)):
        raise ConsistencyError("quasiprobability evaluation produced non-finite values")
    return out


def wigner(p: SuperpositionParams, alpha: complex) -> float:
    return float(wigner_values(p, np.array([alpha]))[0])


def wigner_evolved_values(p: SuperpositionParams, ch: ThermalChannel, points) -> np.ndarray:
    """Evolved quasiprobability at an array of complex points."""
    _check_order(p)
    h = HermiteArgs.from_params(p)
    w, u_mix, v_width, eps = _evolved_weights(p, ch, normalization(p))
    pts = np.ascontiguousarray(np.asarray(points, dtype=np.complex128).reshape(-1))
    out = backend.kernels().wigner_evolved_map(
        pts, complex(p.alpha0), complex(h.ladder), complex(h.direct),
        complex(h.cross), u_mix, v_width, eps, w, p.cross_sign,
    )
    out = np.asarray(out).reshape(np.shape(points))
    if not np.all(np.isfinite(out)):
        raise ConsistencyError("evolved quasiprobability produced non-finite values")
    return out


def wigner_evolved(p: SuperpositionParams, ch: ThermalChannel, gamma_pt: complex) -> float:
    return float(wigner_evolved_values(p, ch, np.array([gamma_pt]))[0])


def wigner_grid(p: SuperpositionParams, spec: GridSpec) -> WignerGrid:
    vals = wigner_values(p, spec.points()).reshape(spec.nx, spec.ny)
    return WignerGrid(spec, vals)


def wigner_evolved_grid(p: SuperpositionParams, ch: ThermalChannel,
                        spec: GridSpec) -> WignerGrid:
    vals = wigner_evolved_values(p, ch, spec.points()).reshape(spec.nx, spec.ny)
    return WignerGrid(spec, vals)


# ---------------------------------------------------------------------------
# negative volume
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for the |W| integral: absolute tolerance, starting grid,
    doubling budget, and optional explicit half-width."""

    tol: float = 1e-4
    base_n: int = 128
    max_doublings: int = 5
    half_width: float | None = None
    edge_mass_tol: float = 1e-6
    max_growths: int = 5


def abs_volume(w_eval, half_width: float, quad: QuadratureSpec) -> float:
    """integral of |W| over the plane by composite midpoint quadrature on a
    centered square, doubling the resolution with Richardson extrapolation
    until the estimate settles, and growing the square until the outermost
    unit-wide annulus carries negligible mass."""
    length = half_width
    for _ in range(quad.max_growths + 1):
        raw = []
        extrapolated = []
        n = quad.base_n
        edge_mass = math.inf
        converged = False
        for level in range(quad.max_doublings + 1):
            spec = GridSpec.square(length, n)
            vals = np.abs(np.asarray(w_eval(spec.points())))
            total = float(vals.sum() * spec.cell_area)
            raw.append(total)
            if level >= 1:
                # midpoint rule is O(h^2); eliminate the leading term
                extrapolated.append(raw[-1] + (raw[-1] - raw[-2]) / 3.0)
            if len(extrapolated) >= 2 and abs(extrapolated[-1] - extrapolated[-2]) < quad.tol:
                re_c = spec.re_centers()
                im_c = spec.im_centers()
                outer = (np.maximum(np.abs(re_c)[:, None], np.abs(im_c)[None, :])
                         > length - 1.0).reshape(-1)
                edge_mass = float(vals[outer].sum() * spec.cell_area)
                converged = True
                break
            n *= 2
        if not converged:
            raise ConvergenceError(
                f"|W| integral did not settle below {quad.tol} within "
                f"{quad.max_doublings} doublings",
                estimates=extrapolated[-2:] if len(extrapolated) >= 2 else raw[-2:],
            )
        if edge_mass < quad.edge_mass_tol:
            return extrapolated[-1]
        length += 2.0
    raise ConvergenceError(
        f"tail mass still {edge_mass:.2e} after growing the window to "
        f"half-width {length}",
        estimates=extrapolated[-2:],
    )


def negative_volume(p: SuperpositionParams, quad: QuadratureSpec | None = None) -> float:
    """Negative part volume of the quasiprobability,
    delta = (integral |W| - 1)/2; zero exactly for Gaussian states."""
    _check_order(p)
    quad = quad or QuadratureSpec()
    half_width = quad.half_width or (abs(p.alpha0) + 6.0)
    total = abs_volume(lambda pts: wigner_values(p, pts), half_width, quad)
    delta = 0.5 * (total - 1.0)
    if delta < 0.0:
        if delta < -quad.tol:
            raise ConsistencyError(
                f"|W| integral {total!r} fell below 1 by more than the tolerance"
            )
        warnings.warn(f"negative volume {delta:.2e} clamped to zero", stacklevel=2)
        return 0.0
    return delta
