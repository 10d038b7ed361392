"""Panel registry and CSV schema validation.

Each figure panel produced by the ``catops figure`` CLI has a fixed column
layout; renders are driven entirely by this table so a schema drift fails
loudly with the offending column named.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class SchemaError(Exception):
    """Input CSV does not match the documented panel schema."""


@dataclass(frozen=True)
class LinePanel:
    x: str                 # x-axis column
    y: str                 # value column
    family: str | None     # one curve per distinct value, None for a single curve
    x_label: str
    y_label: str


@dataclass(frozen=True)
class BarPanel:
    x: str
    y: str
    x_label: str
    y_label: str


@dataclass(frozen=True)
class GridPanel:
    x_label: str = "Re"
    y_label: str = "Im"


FIDELITY = "overlap with the bare cat"
PANELS = {
    "fig1a": LinePanel("alpha0", "fidelity", "m", "amplitude", FIDELITY),
    "fig1b": LinePanel("alpha0", "fidelity", "theta", "amplitude", FIDELITY),
    "fig1c": LinePanel("alpha0", "fidelity", "phi", "amplitude", FIDELITY),
    "fig2a": LinePanel("alpha0", "q", "m", "amplitude", "Mandel Q"),
    "fig2b": LinePanel("alpha0", "q", "m", "amplitude", "Mandel Q"),
    "fig2c": LinePanel("alpha0", "q", "theta", "amplitude", "Mandel Q"),
    "fig2d": LinePanel("alpha0", "q", "phi", "amplitude", "Mandel Q"),
    "fig3a": LinePanel("theta", "s", "m", "mixing angle", "squeezing"),
    "fig3b": LinePanel("theta", "s", "m", "mixing angle", "squeezing"),
    "fig3c": LinePanel("theta", "s", "alpha0", "mixing angle", "squeezing"),
    "fig3d": LinePanel("theta", "s", "phi", "mixing angle", "squeezing"),
    "fig4a": BarPanel("n", "p", "counts", "probability"),
    "fig4b": BarPanel("n", "p", "counts", "probability"),
    "fig4c": BarPanel("n", "p", "counts", "probability"),
    "fig5a": BarPanel("n", "p", "counts", "probability"),
    "fig5b": BarPanel("n", "p", "counts", "probability"),
    "fig6a": GridPanel(), "fig6b": GridPanel(),
    "fig6c": GridPanel(), "fig6d": GridPanel(),
    "fig7a": GridPanel(), "fig7b": GridPanel(),
    "fig8a": LinePanel("theta", "delta", "m", "mixing angle", "negative volume"),
    "fig8b": LinePanel("theta", "delta", "alpha0", "mixing angle", "negative volume"),
    "fig9a": GridPanel(), "fig9b": GridPanel(),
    "fig9c": GridPanel(), "fig9d": GridPanel(),
    "fig10a": GridPanel(), "fig10b": GridPanel(),
    "fig10c": GridPanel(), "fig10d": GridPanel(),
}

FIGURES = {}
for _name in PANELS:
    FIGURES.setdefault(_name[:-1], []).append(_name)
for _panels in FIGURES.values():
    _panels.sort()


def required_columns(panel: str):
    spec = PANELS[panel]
    if isinstance(spec, GridPanel):
        return ("re", "im", "w")
    if isinstance(spec, BarPanel):
        return (spec.x, spec.y)
    cols = [spec.x, spec.y]
    if spec.family:
        cols.insert(0, spec.family)
    return tuple(cols)


def load_panel(panel: str, path) -> dict:
    """Read one panel CSV into {column: float array}, schema checked."""
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"{panel}: input file {path} does not exist")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{panel}: {path} is empty")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{panel}: {path} has a header but no data rows")
    for col in required_columns(panel):
        if col not in header:
            raise SchemaError(f"{panel}: missing column {col!r} in {path}")
    idx = {col: header.index(col) for col in header}
    out = {}
    try:
        for col in required_columns(panel):
            out[col] = np.array([float(r[idx[col]]) for r in rows])
    except (ValueError, IndexError) as exc:
        raise SchemaError(f"{panel}: malformed row in {path}: {exc}")
    return out


def grid_arrays(data: dict):
    """Reshape row-major (re outer) grid columns to 2-D arrays."""
    re, im, w = data["re"], data["im"], data["w"]
    nx = len(np.unique(re))
    ny = len(np.unique(im))
    if nx * ny != len(w):
        raise SchemaError(f"grid is not rectangular: {nx} x {ny} != {len(w)} rows")
    return re.reshape(nx, ny), im.reshape(nx, ny), w.reshape(nx, ny)
