"""Named dataset presets.

Each preset writes one CSV reproducing one panel of the standard figure
set (fidelity curves, Mandel Q curves, squeezing curves, count histograms,
quasiprobability grids, negativity curves, decoherence grids) and, where a
crisp qualitative claim exists for that panel, prints a one-line verdict.
Group names (``fig4``) run all panels and add cross-panel verdicts.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path

import numpy as np

from .sweep import SweepConfig, run_compute
from .phasespace import GridSpec, QuadratureSpec, ThermalChannel, thermal_wigner

_PI = math.pi


def _lin(a, b, n):
    return {"start": a, "stop": b, "count": n}


def _sweep(quantity, scalars, axes, extras=None):
    return SweepConfig(quantity=quantity, scalars=dict(scalars), axes=list(axes),
                       extras=dict(extras or {}))


_ALPHA_AXIS = _lin(0.05, 4.0, 80)
_QA_AXIS = _lin(0.1, 3.0, 60)
_THETA_AXIS = _lin(0.02, _PI / 2 - 0.02, 60)
_NEG_THETA_AXIS = {"values": [float(v) for v in np.linspace(_PI / 16, 1.45, 10)]}
_GRID4 = GridSpec(-4.0, 4.0, -4.0, 4.0, 101, 101)
_GRID6 = GridSpec(-6.0, 6.0, -6.0, 6.0, 101, 101)
_FIG9_BASE = {"m": 1, "theta": _PI / 3, "phi": 0.0, "alpha0": 1 + 1j, "parity": "odd"}


def _preset_defs():
    d = {}
    # fidelity panels
    d["fig1a"] = _sweep("fidelity", {"theta": _PI / 3, "phi": 0.0, "parity": "odd"},
                        [("m", [0, 1, 2, 3, 4]), ("alpha0", _axis(_ALPHA_AXIS))])
    d["fig1b"] = _sweep("fidelity", {"m": 2, "phi": 0.0, "parity": "odd"},
                        [("theta", [_PI / 8, _PI / 6, _PI / 4, _PI / 3]),
                         ("alpha0", _axis(_ALPHA_AXIS))])
    d["fig1c"] = _sweep("fidelity", {"m": 2, "theta": _PI / 3, "parity": "odd"},
                        [("phi", [0.0, _PI / 6, _PI / 3, _PI / 2]),
                         ("alpha0", _axis(_ALPHA_AXIS))])
    # Mandel Q panels
    d["fig2a"] = _sweep("mandel_q", {"theta": _PI / 4, "phi": 0.0, "parity": "odd"},
                        [("m", [1, 2, 3, 4]), ("alpha0", _axis(_QA_AXIS))])
    d["fig2b"] = _sweep("mandel_q", {"theta": _PI / 8, "phi": 0.0, "parity": "odd"},
                        [("m", [1, 2, 3, 4]), ("alpha0", _axis(_QA_AXIS))])
    d["fig2c"] = _sweep("mandel_q", {"m": 1, "phi": 0.0, "parity": "odd"},
                        [("theta", [_PI / 8, _PI / 6, _PI / 4, _PI / 3, _PI / 2.1]),
                         ("alpha0", _axis(_QA_AXIS))])
    d["fig2d"] = _sweep("mandel_q", {"m": 1, "theta": _PI / 4, "parity": "odd"},
                        [("phi", [0.0, _PI / 6, _PI / 4, _PI / 3]),
                         ("alpha0", _axis(_QA_AXIS))])
    # squeezing panels
    d["fig3a"] = _sweep("squeezing", {"alpha0": 0.1 + 0j, "phi": 0.0, "parity": "odd"},
                        [("m", [1, 3, 5, 7]), ("theta", _axis(_THETA_AXIS))])
    d["fig3b"] = _sweep("squeezing", {"alpha0": 0.1 + 0j, "phi": 0.0, "parity": "odd"},
                        [("m", [0, 2, 4, 10]), ("theta", _axis(_THETA_AXIS))])
    d["fig3c"] = _sweep("squeezing", {"m": 1, "phi": 0.0, "parity": "odd"},
                        [("theta", _axis(_THETA_AXIS)),
                         ("alpha0", [0.1, 0.3, 0.6, 1.0])])
    d["fig3d"] = _sweep("squeezing", {"m": 1, "alpha0": 0.1 + 0j, "parity": "odd"},
                        [("phi", [0.0, _PI / 6, _PI / 4, _PI / 3]),
                         ("theta", _axis(_THETA_AXIS))])
    # photocount histograms
    base4 = {"theta": _PI / 4, "phi": 0.0, "alpha0": 0.5 + 0.5j, "parity": "odd"}
    d["fig4a"] = _sweep("photocount", dict(base4, m=4), [], {"xi": 0.2, "n_max": 12})
    d["fig4b"] = _sweep("photocount", dict(base4, m=4), [], {"xi": 0.9, "n_max": 16})
    d["fig4c"] = _sweep("photocount", dict(base4, m=1), [], {"xi": 0.2, "n_max": 12})
    base5 = {"m": 4, "theta": _PI / 8, "alpha0": 0.5 + 0.5j, "parity": "odd"}
    d["fig5a"] = _sweep("photocount", dict(base5, phi=0.0), [], {"xi": 0.9, "n_max": 16})
    d["fig5b"] = _sweep("photocount", dict(base5, phi=_PI / 2), [], {"xi": 0.9, "n_max": 16})
    # static quasiprobability grids
    for name, m in [("fig6a", 0), ("fig6b", 1), ("fig6c", 2), ("fig6d", 3)]:
        d[name] = _sweep("wigner",
                         {"m": m, "theta": _PI / 3, "phi": 0.0,
                          "alpha0": 1 + 1j, "parity": "odd"},
                         [], {"grid": _GRID4})
    d["fig7a"] = _sweep("wigner", {"m": 2, "theta": _PI / 8, "phi": 0.0,
                                   "alpha0": 1 + 1j, "parity": "odd"},
                        [], {"grid": _GRID4})
    d["fig7b"] = _sweep("wigner", {"m": 2, "theta": _PI / 3, "phi": 0.0,
                                   "alpha0": 2 + 2j, "parity": "odd"},
                        [], {"grid": _GRID6})
    # negativity curves
    d["fig8a"] = _sweep("negativity", {"alpha0": 0.1 + 0j, "phi": 0.0, "parity": "odd"},
                        [("m", [0, 1, 2, 3]), ("theta", _axis(_NEG_THETA_AXIS))],
                        {"quad": QuadratureSpec()})
    d["fig8b"] = _sweep("negativity", {"m": 1, "phi": 0.0, "parity": "odd"},
                        [("theta", _axis(_NEG_THETA_AXIS)),
                         ("alpha0", [0.1, 0.5, 1.0])],
                        {"quad": QuadratureSpec()})
    # decoherence grids
    for name, kt in [("fig9a", 0.001), ("fig9b", 0.05), ("fig9c", 0.1), ("fig9d", 3.0)]:
        d[name] = _sweep("evolved_wigner", _FIG9_BASE, [],
                         {"grid": _GRID4, "channel": ThermalChannel(kt, 0.2)})
    for name, nbar in [("fig10a", 0.0), ("fig10b", 0.5), ("fig10c", 2.0), ("fig10d", 8.0)]:
        d[name] = _sweep("evolved_wigner", _FIG9_BASE, [],
                         {"grid": _GRID4, "channel": ThermalChannel(0.05, nbar)})
    return d


def _axis(raw):
    if "values" in raw:
        return [float(v) for v in raw["values"]]
    return [float(v) for v in np.linspace(raw["start"], raw["stop"], raw["count"])]


PRESETS = _preset_defs()
GROUPS = sorted({name[:-1] for name in PRESETS})


def preset_names():
    return sorted(PRESETS)


def _read_rows(path: Path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = list(reader)
    return rows


def _column(rows, name):
    return np.array([float(r[name]) for r in rows])


def _grid_stats(path: Path):
    rows = _read_rows(path)
    w = _column(rows, "w")
    re = _column(rows, "re")
    im = _column(rows, "im")
    i = int(np.argmin(w))
    return w, re, im, i


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

def _panel_verdict(name: str, path: Path):
    rows = _read_rows(path)
    if name == "fig1a":
        f = _column([r for r in rows if r["m"] == "0"], "fidelity")
        ok = bool(np.max(np.abs(f - 1.0)) <= 1e-12)
        return f"m=0 curve identically 1: {'PASS' if ok else 'FAIL'}"
    if name == "fig2a":
        q = _column(rows, "q")
        return f"all Q < 0: {'PASS' if q.max() < 0 else 'FAIL'} (max {q.max():.4f})"
    if name == "fig2b":
        q = _column(rows, "q")
        return f"super-Poissonian region present (some Q > 0): {'PASS' if q.max() > 0 else 'FAIL'}"
    if name == "fig3a":
        s = _column(rows, "s")
        return f"squeezing present for odd m (min S < 0): {'PASS' if s.min() < 0 else 'FAIL'}"
    if name == "fig3b":
        s = _column(rows, "s")
        return f"no squeezing for even m (min S >= 0): {'PASS' if s.min() >= -1e-10 else 'FAIL'}"
    if name in ("fig4a", "fig4b", "fig4c"):
        p = _column(rows, "p")
        peak = int(np.argmax(p))
        expected = {"fig4a": 0, "fig4b": 3, "fig4c": 0}[name]
        return (f"count distribution peaks at n={peak}: "
                f"{'PASS' if peak == expected else 'FAIL'}")
    if name in ("fig6a", "fig6c"):
        w, re, im, i = _grid_stats(path)
        at_center = bool(abs(re[i]) < 0.05 and abs(im[i]) < 0.05)
        return (f"minimum {w[i]:.4f} at ({re[i]:.2f}, {im[i]:.2f}), center: "
                f"{'PASS' if at_center else 'FAIL'}")
    if name in ("fig6b", "fig6d"):
        w, re, im, i = _grid_stats(path)
        off_center = bool(abs(re[i]) > 0.05 or abs(im[i]) > 0.05)
        return (f"minimum {w[i]:.4f} away from center: "
                f"{'PASS' if off_center else 'FAIL'}")
    if name == "fig8a":
        ok = True
        for m in ("1", "2", "3"):
            sub = [r for r in rows if r["m"] == m]
            th = _column(sub, "theta")
            de = _column(sub, "delta")
            sel = (th >= _PI / 8 - 1e-9) & (th <= _PI / 3 + 1e-9)
            d = de[sel][np.argsort(th[sel])]
            ok &= bool(np.all(np.diff(d) > -1e-6))
        return f"negativity grows with theta on [pi/8, pi/3] for m >= 1: {'PASS' if ok else 'FAIL'}"
    if name == "fig9d":
        w, re, im, _ = _grid_stats(path)
        ref = np.array([thermal_wigner(0.2, complex(a, b)) for a, b in zip(re, im)])
        sup = float(np.max(np.abs(w - ref)))
        return (f"sup distance to thermal fixed point {sup:.2e} "
                f"(< 5e-3: {'PASS' if sup < 5e-3 else 'FAIL'})")
    return None


def _group_verdicts(group: str, paths: dict):
    if group == "fig4" and {"fig4a", "fig4b"} <= set(paths):
        pa = _column(_read_rows(paths["fig4a"]), "p")
        pb = _column(_read_rows(paths["fig4b"]), "p")
        up = int(np.argmax(pb)) > int(np.argmax(pa))
        yield (f"fig4: count peak moves up with xi "
               f"(n={int(np.argmax(pa))} -> n={int(np.argmax(pb))}): "
               f"{'PASS' if up else 'FAIL'}")
    if group == "fig10" and len(paths) == 4:
        mins = [float(np.min(_grid_stats(paths[f'fig10{s}'])[0])) for s in "abcd"]
        ok = all(mins[i + 1] >= mins[i] - 1e-12 for i in range(3))
        yield (f"fig10: grid minimum nondecreasing in nbar "
               f"({', '.join(f'{v:.4f}' for v in mins)}): {'PASS' if ok else 'FAIL'}")


def run_figure(name: str, out_dir, threads: int = 1, report=print):
    """Run one panel preset or a whole figure group; returns written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if name in PRESETS:
        panels = [name]
    elif name in GROUPS:
        panels = sorted(p for p in PRESETS if p.startswith(name) and p[len(name):].isalpha())
        panels = [p for p in panels if len(p) == len(name) + 1]
    elif name == "all":
        panels = preset_names()
    else:
        raise KeyError(f"unknown figure preset {name!r}")

    written = {}
    for panel in panels:
        cfg = PRESETS[panel]
        path = out_dir / f"{panel}.csv"
        buf = io.StringIO()
        run_compute(cfg, buf, threads=threads)
        path.write_text(buf.getvalue())
        written[panel] = path
        verdict = _panel_verdict(panel, path)
        if verdict:
            report(f"{panel}: {verdict}")
    for group in sorted({p[:-1] for p in panels}):
        group_paths = {p: written[p] for p in written if p.startswith(group)}
        for line in _group_verdicts(group, group_paths):
            report(line)
    return [written[p] for p in panels]
