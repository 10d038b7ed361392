"""Config-driven computation of any quantity over parameter sweeps.

A run is described by a single JSON document (see docs/config.md):
quantity name, state parameters with any scalar replaced by a range or an
explicit value list, quantity-specific extras, an output path, and an
optional oracle cross-check.  Output is CSV with one row per parameter
tuple, rows ordered lexicographically over the sweep axes, numbers printed
in shortest round-trip form so identical configs give identical bytes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import fockoracle, phasespace, state
from .errors import ConfigError
from .phasespace import GridSpec, QuadratureSpec, ThermalChannel

QUANTITIES = (
    "normalization", "fidelity", "mandel_q", "squeezing",
    "photocount", "wigner", "negativity", "evolved_wigner",
)
GRID_QUANTITIES = ("wigner", "evolved_wigner")

# canonical sweep-axis order; rows are emitted lexicographically over these
AXIS_ORDER = ("m", "theta", "phi", "alpha0")

RESULT_COLUMN = {
    "normalization": "norm",
    "fidelity": "fidelity",
    "mandel_q": "q",
    "squeezing": "s",
    "photocount": "p",
    "negativity": "delta",
}

ORACLE_TOL_REL = 1e-6


@dataclass
class SweepConfig:
    quantity: str
    scalars: dict            # fixed fields: subset of m/theta/phi/alpha0 + parity
    axes: list = field(default_factory=list)   # [(name, [values...]), ...]
    extras: dict = field(default_factory=dict)
    output: str | None = None
    oracle_check: bool = False


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _axis_values(name, raw, path):
    if isinstance(raw, dict):
        extra = set(raw) - {"start", "stop", "count", "values"}
        if extra:
            raise ConfigError(f"{path}: unknown keys {sorted(extra)}")
        if "values" in raw:
            vals = raw["values"]
            if not isinstance(vals, list) or not vals:
                raise ConfigError(f"{path}.values: need a non-empty list")
            out = [float(v) for v in vals]
        else:
            try:
                start, stop, count = raw["start"], raw["stop"], int(raw["count"])
            except KeyError as missing:
                raise ConfigError(f"{path}: range needs start/stop/count, missing {missing}")
            if count < 1:
                raise ConfigError(f"{path}.count: must be >= 1")
            out = [float(v) for v in np.linspace(start, stop, count)]
        if name == "m":
            ints = [int(round(v)) for v in out]
            if any(abs(i - v) > 1e-9 or i < 0 for i, v in zip(ints, out)):
                raise ConfigError(f"{path}: m values must be non-negative integers")
            return ints
        return out
    return None


def parse_config(doc) -> SweepConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    unknown = set(doc) - {"quantity", "params", "extras", "output", "oracle_check"}
    if unknown:
        raise ConfigError(f"unknown top-level keys {sorted(unknown)}")
    quantity = doc.get("quantity")
    if quantity not in QUANTITIES:
        raise ConfigError(f"quantity: expected one of {QUANTITIES}, got {quantity!r}")
    params = doc.get("params")
    if not isinstance(params, dict):
        raise ConfigError("params: required object")
    unknown = set(params) - {"m", "theta", "phi", "alpha0", "parity"}
    if unknown:
        raise ConfigError(f"params: unknown keys {sorted(unknown)}")

    scalars = {"parity": params.get("parity", "odd")}
    if scalars["parity"] not in ("odd", "even"):
        raise ConfigError(f"params.parity: expected 'odd' or 'even', got {scalars['parity']!r}")
    axes = []
    for name in AXIS_ORDER:
        if name not in params:
            raise ConfigError(f"params.{name}: required")
        raw = params[name]
        swept = _axis_values(name, raw, f"params.{name}")
        if swept is not None:
            axes.append((name, swept))
            continue
        if name == "m":
            if not isinstance(raw, int) or raw < 0:
                raise ConfigError(f"params.m: expected non-negative integer")
            scalars["m"] = raw
        elif name == "alpha0":
            if isinstance(raw, list) and len(raw) == 2:
                scalars["alpha0"] = complex(float(raw[0]), float(raw[1]))
            elif isinstance(raw, (int, float)):
                scalars["alpha0"] = complex(float(raw), 0.0)
            else:
                raise ConfigError("params.alpha0: expected [re, im], a number, or a sweep")
        else:
            if not isinstance(raw, (int, float)):
                raise ConfigError(f"params.{name}: expected a number or a sweep")
            scalars[name] = float(raw)

    extras = doc.get("extras", {})
    if not isinstance(extras, dict):
        raise ConfigError("extras: must be an object")
    cfg = SweepConfig(
        quantity=quantity, scalars=scalars, axes=axes, extras=dict(extras),
        output=doc.get("output"), oracle_check=bool(doc.get("oracle_check", False)),
    )
    _validate_extras(cfg)
    if quantity in GRID_QUANTITIES and cfg.axes:
        raise ConfigError(f"{quantity} does not support swept parameters")
    if quantity == "fidelity" and scalars["parity"] != "odd":
        raise ConfigError("fidelity requires parity = 'odd'")
    return cfg


def _require_keys(extras, required, optional, quantity):
    missing = set(required) - set(extras)
    if missing:
        raise ConfigError(f"extras: {quantity} requires {sorted(missing)}")
    unknown = set(extras) - set(required) - set(optional)
    if unknown:
        raise ConfigError(f"extras: unknown keys {sorted(unknown)} for {quantity}")


def _parse_grid(raw, path="extras.grid") -> GridSpec:
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: required object")
    keys = {"re_min", "re_max", "im_min", "im_max", "nx", "ny"}
    if set(raw) != keys:
        raise ConfigError(f"{path}: needs exactly keys {sorted(keys)}")
    try:
        return GridSpec(float(raw["re_min"]), float(raw["re_max"]),
                        float(raw["im_min"]), float(raw["im_max"]),
                        int(raw["nx"]), int(raw["ny"]))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}")


def _parse_channel(raw, path="extras.channel") -> ThermalChannel:
    if not isinstance(raw, dict) or set(raw) != {"kappa_t", "nbar"}:
        raise ConfigError(f"{path}: needs exactly keys ['kappa_t', 'nbar']")
    try:
        return ThermalChannel(float(raw["kappa_t"]), float(raw["nbar"]))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}")


def _parse_quad(raw, path="extras.quad") -> QuadratureSpec:
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: must be an object")
    allowed = {"tol", "base_n", "max_doublings", "half_width"}
    unknown = set(raw) - allowed
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")
    kwargs = {}
    if "tol" in raw:
        kwargs["tol"] = float(raw["tol"])
    if "base_n" in raw:
        kwargs["base_n"] = int(raw["base_n"])
    if "max_doublings" in raw:
        kwargs["max_doublings"] = int(raw["max_doublings"])
    if raw.get("half_width") is not None:
        kwargs["half_width"] = float(raw["half_width"])
    return QuadratureSpec(**kwargs)


def _validate_extras(cfg: SweepConfig) -> None:
    q, extras = cfg.quantity, cfg.extras
    if q == "photocount":
        _require_keys(extras, ["xi", "n_max"], [], q)
        xi = float(extras["xi"])
        if not 0.0 < xi <= 1.0:
            raise ConfigError("extras.xi: must lie in (0, 1]")
        n_max = int(extras["n_max"])
        if not 0 <= n_max <= state.N_MAX:
            raise ConfigError(f"extras.n_max: must lie in [0, {state.N_MAX}]")
        extras["xi"], extras["n_max"] = xi, n_max
    elif q == "wigner":
        _require_keys(extras, ["grid"], [], q)
        extras["grid"] = _parse_grid(extras["grid"])
    elif q == "evolved_wigner":
        _require_keys(extras, ["grid", "channel"], [], q)
        extras["grid"] = _parse_grid(extras["grid"])
        extras["channel"] = _parse_channel(extras["channel"])
    elif q == "negativity":
        _require_keys(extras, [], ["quad"], q)
        extras["quad"] = _parse_quad(extras.get("quad", {}))
    else:
        _require_keys(extras, [], [], q)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _make_params(cfg: SweepConfig, assignment: dict) -> state.SuperpositionParams:
    merged = dict(cfg.scalars)
    merged.update(assignment)
    alpha0 = merged["alpha0"]
    if not isinstance(alpha0, complex):
        alpha0 = complex(float(alpha0), 0.0)
    try:
        return state.SuperpositionParams(
            int(merged["m"]), float(merged["theta"]), float(merged["phi"]),
            alpha0, merged["parity"],
        )
    except ValueError as exc:
        raise ConfigError(f"invalid parameter combination {assignment}: {exc}")


def _scalar_value(quantity, p, extras, n=None):
    if quantity == "normalization":
        return state.normalization(p)
    if quantity == "fidelity":
        return state.fidelity(p)
    if quantity == "mandel_q":
        return state.mandel_q(p)
    if quantity == "squeezing":
        return state.squeezing(p)
    if quantity == "photocount":
        return state.photocount(p, extras["xi"], n)
    if quantity == "negativity":
        return phasespace.negative_volume(p, extras["quad"])
    raise ConfigError(f"unsupported scalar quantity {quantity}")


def _oracle_vector(p, heavy=False):
    cutoff = fockoracle.cutoff_select(p, 1e-14)
    if heavy:
        cutoff = max(128, 2 * cutoff)
    return fockoracle.build_state(p, cutoff)


def _oracle_value(quantity, p, extras, n=None):
    if quantity == "negativity":
        vec = _oracle_vector(p, heavy=True)
        quad = extras["quad"]
        half_width = quad.half_width or (abs(p.alpha0) + 6.0)
        total = phasespace.abs_volume(
            lambda pts: np.array([fockoracle.oracle_wigner(vec, z) for z in pts]),
            half_width, quad)
        return 0.5 * (total - 1.0)
    vec = _oracle_vector(p)
    if quantity == "normalization":
        return vec.norm_sq()
    if quantity == "fidelity":
        bare = state.SuperpositionParams(0, p.theta, p.phi, p.alpha0, p.parity)
        bare_vec = fockoracle.build_state(bare, vec.cutoff)
        overlap = abs(np.vdot(bare_vec.amps, vec.amps)) ** 2
        return overlap / (vec.norm_sq() * bare_vec.norm_sq())
    if quantity == "mandel_q":
        nbar = fockoracle.oracle_moment(vec, 1, 1).real
        quart = fockoracle.oracle_moment(vec, 2, 2).real
        return quart / nbar - nbar
    if quantity == "squeezing":
        nbar = fockoracle.oracle_moment(vec, 1, 1).real
        pair = fockoracle.oracle_moment(vec, 2, 0)
        return -2.0 * abs(pair) + 2.0 * nbar
    if quantity == "photocount":
        return fockoracle.oracle_photocount(vec, extras["xi"], n)
    raise ConfigError(f"oracle check unsupported for {quantity}")


def _row_task(args):
    cfg, assignment, n = args
    p = _make_params(cfg, assignment)
    value = _scalar_value(cfg.quantity, p, cfg.extras, n)
    diff = None
    if cfg.oracle_check:
        oracle = _oracle_value(cfg.quantity, p, cfg.extras, n)
        diff = abs(value - oracle)
        rel = diff / max(abs(oracle), 1e-10)
        if rel > ORACLE_TOL_REL:
            raise OracleMismatch(
                f"{cfg.quantity} at {assignment}: |closed - oracle| = {diff:.3e} "
                f"({rel:.3e} relative) exceeds {ORACLE_TOL_REL}"
            )
    return value, diff


class OracleMismatch(Exception):
    pass


def _assignments(cfg: SweepConfig):
    """Lexicographic product over the sweep axes in canonical order."""
    axes = sorted(cfg.axes, key=lambda ax: AXIS_ORDER.index(ax[0]))
    out = [{}]
    for name, values in axes:
        out = [dict(a, **{name: v}) for a in out for v in values]
    return axes, out


def run_compute(cfg: SweepConfig, stream, threads: int = 1) -> None:
    """Evaluate the configured quantity and write CSV to ``stream``."""
    if cfg.quantity in GRID_QUANTITIES:
        _run_grid(cfg, stream)
        return
    axes, assignments = _assignments(cfg)
    header = [name for name, _ in axes]
    counts = None
    if cfg.quantity == "photocount":
        counts = list(range(cfg.extras["n_max"] + 1))
        header.append("n")
    header.append(RESULT_COLUMN[cfg.quantity])
    if cfg.oracle_check:
        header.append("oracle_abs_diff")

    tasks = []
    for a in assignments:
        if counts is None:
            tasks.append((cfg, a, None))
        else:
            tasks.extend((cfg, a, n) for n in counts)

    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_row_task, tasks, chunksize=max(1, len(tasks) // (4 * threads))))
    else:
        results = [_row_task(t) for t in tasks]

    stream.write(",".join(header) + "\n")
    for (cf, assignment, n), (value, diff) in zip(tasks, results):
        cells = [_fmt(assignment[name]) for name, _ in axes]
        if n is not None:
            cells.append(str(n))
        cells.append(_fmt(value))
        if cfg.oracle_check:
            cells.append(_fmt(diff))
        stream.write(",".join(cells) + "\n")


def _run_grid(cfg: SweepConfig, stream) -> None:
    p = _make_params(cfg, {})
    spec = cfg.extras["grid"]
    if cfg.quantity == "wigner":
        grid = phasespace.wigner_grid(p, spec)
    else:
        grid = phasespace.wigner_evolved_grid(p, cfg.extras["channel"], spec)
    if not cfg.oracle_check:
        grid.write_csv(stream)
        return
    if cfg.quantity == "evolved_wigner":
        raise ConfigError("oracle_check is not supported for evolved_wigner grids")
    max_abs = max(abs(spec.re_min), abs(spec.re_max), abs(spec.im_min), abs(spec.im_max))
    need = math.ceil((2.0 * max_abs * math.sqrt(2.0)) ** 2)
    cutoff = 32
    while cutoff < need:
        cutoff *= 2
    vec = fockoracle.build_state(p, max(cutoff, 2 * fockoracle.cutoff_select(p, 1e-14)))
    re = spec.re_centers()
    im = spec.im_centers()
    stream.write("re,im,w,oracle_abs_diff\n")
    for i in range(spec.nx):
        for j in range(spec.ny):
            val = grid.values[i, j]
            oracle = fockoracle.oracle_wigner(vec, complex(re[i], im[j]))
            diff = abs(val - oracle)
            if diff / max(abs(oracle), 1e-10) > ORACLE_TOL_REL:
                raise OracleMismatch(
                    f"wigner at ({re[i]}, {im[j]}): diff {diff:.3e} exceeds tolerance"
                )
            stream.write(f"{_fmt(re[i])},{_fmt(im[j])},{_fmt(val)},{_fmt(diff)}\n")
