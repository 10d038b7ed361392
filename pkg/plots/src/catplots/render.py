"""Figure rendering from panel CSVs.

One raster image per figure group; line panels for the curve families,
bar panels for the count histograms, and heatmaps with a diverging
palette anchored at zero for the phase-space grids (so negative regions
are visually unambiguous).  Rendering is read-only over its inputs and
deterministic: fixed size, dpi, and layout per figure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .schema import (
    FIGURES, PANELS, BarPanel, GridPanel, LinePanel, SchemaError,
    grid_arrays, load_panel,
)

DPI = 120
PANEL_W = 4.0   # inches per panel column
PANEL_H = 3.4


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    inputs: dict = field(default_factory=dict)   # panel name -> csv path
    output: str | Path = ""

    @classmethod
    def from_dir(cls, figure_id: str, csv_dir, out_dir) -> "FigureSpec":
        if figure_id not in FIGURES:
            raise SchemaError(f"unknown figure id {figure_id!r}")
        csv_dir = Path(csv_dir)
        inputs = {p: csv_dir / f"{p}.csv" for p in FIGURES[figure_id]}
        return cls(figure_id, inputs, Path(out_dir) / f"{figure_id}.png")


def _layout(n_panels: int):
    if n_panels <= 3:
        return 1, n_panels
    return 2, (n_panels + 1) // 2


def _draw_line(ax, panel, data):
    spec = PANELS[panel]
    if spec.family is None:
        ax.plot(data[spec.x], data[spec.y], lw=1.4)
    else:
        fam = data[spec.family]
        for value in sorted(set(fam.tolist())):
            sel = fam == value
            order = np.argsort(data[spec.x][sel])
            label = f"{spec.family}={value:g}"
            ax.plot(data[spec.x][sel][order], data[spec.y][sel][order],
                    lw=1.4, label=label)
        ax.legend(fontsize=7, frameon=False)
    ax.axhline(0.0, color="0.7", lw=0.6, zorder=0)
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)


def _draw_bar(ax, panel, data):
    spec = PANELS[panel]
    ax.bar(data[spec.x], data[spec.y], width=0.8, color="#477db8")
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)


def _draw_grid(ax, fig, panel, data):
    spec = PANELS[panel]
    re, im, w = grid_arrays(data)
    peak = float(np.max(np.abs(w))) or 1.0
    # diverging palette anchored at zero: sign of every cell is unambiguous
    mesh = ax.pcolormesh(re, im, w, cmap="RdBu_r", vmin=-peak, vmax=peak,
                         shading="nearest")
    fig.colorbar(mesh, ax=ax, shrink=0.85)
    ax.set_xlabel(spec.x_label)
    ax.set_ylabel(spec.y_label)
    ax.set_aspect("equal")


def render(spec: FigureSpec) -> Path:
    """Render one figure from its panel CSVs; returns the image path."""
    panels = FIGURES[spec.figure_id]
    loaded = {}
    for panel in panels:
        if panel not in spec.inputs:
            raise SchemaError(f"{spec.figure_id}: no input path for panel {panel}")
        loaded[panel] = load_panel(panel, spec.inputs[panel])

    rows, cols = _layout(len(panels))
    fig, axes = plt.subplots(rows, cols,
                             figsize=(PANEL_W * cols, PANEL_H * rows),
                             dpi=DPI, squeeze=False)
    try:
        for ax in axes.flat[len(panels):]:
            ax.set_visible(False)
        for ax, panel in zip(axes.flat, panels):
            kind = PANELS[panel]
            if isinstance(kind, GridPanel):
                _draw_grid(ax, fig, panel, loaded[panel])
            elif isinstance(kind, BarPanel):
                _draw_bar(ax, panel, loaded[panel])
            else:
                _draw_line(ax, panel, loaded[panel])
            ax.set_title(panel, fontsize=9)
        fig.tight_layout()
        out = Path(spec.output)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out)
    finally:
        plt.close(fig)
    return out


def render_all(csv_dir, out_dir, report=print):
    """Render every figure whose panel CSVs are all present in csv_dir.

    Returns (rendered paths, missing figure ids).
    """
    rendered, missing = [], []
    for figure_id in sorted(FIGURES):
        spec = FigureSpec.from_dir(figure_id, csv_dir, out_dir)
        absent = [p for p, path in spec.inputs.items() if not Path(path).exists()]
        if absent:
            missing.append(figure_id)
            report(f"{figure_id}: skipped, missing {', '.join(absent)}")
            continue
        rendered.append(render(spec))
        report(f"{figure_id}: wrote {rendered[-1]}")
    return rendered, missing
