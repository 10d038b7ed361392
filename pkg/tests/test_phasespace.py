"""Phase-space quantities: point values against the displaced-parity
oracle, grid bookkeeping, the negative-volume quadrature, thermal decay,
and the two kernel backends."""

import math

import numpy as np
import pytest

from catops import _kernels, backend, fockoracle as fo, phasespace as ps
from catops.errors import ConsistencyError, ConvergenceError
from catops.phasespace import (
    GridSpec, QuadratureSpec, ThermalChannel, WignerGrid,
    abs_volume, negative_volume, thermal_wigner,
    wigner, wigner_evolved, wigner_evolved_grid, wigner_evolved_values,
    wigner_grid, wigner_values,
)
from catops.state import SuperpositionParams

P9 = SuperpositionParams(1, math.pi / 3, 0.0, 1 + 1j)


def test_center_value_bare_cat():
    for a0 in (0.3, 1.0, 1 + 1j):
        p = SuperpositionParams(0, 0.7, 0.0, a0)
        assert wigner(p, 0.0) == pytest.approx(-2 / math.pi, rel=1e-12)


def test_matches_displaced_parity_oracle():
    rng = np.random.RandomState(1)
    for p in [SuperpositionParams(1, math.pi / 4, 0.0, 1.0),
              SuperpositionParams(2, math.pi / 3, 0.7, 0.5 + 0.5j),
              SuperpositionParams(3, math.pi / 8, math.pi / 2, 1 + 1j),
              SuperpositionParams(2, 0.5, 1.1, 0.6, "even")]:
        v = fo.build_state(p, max(128, 2 * fo.cutoff_select(p, 1e-14)))
        for _ in range(3):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            assert wigner(p, z) == pytest.approx(
                fo.oracle_wigner(v, z), rel=1e-8, abs=1e-12)


def test_grid_symmetry_and_distinctness():
    spec = GridSpec.square(3.0, 40)
    g0 = wigner_grid(SuperpositionParams(0, 0.7, 0.0, 1.0), spec)
    # density matrix is parity symmetric: values invariant under point reflection
    assert np.allclose(g0.values, g0.values[::-1, ::-1], atol=1e-13)
    g1 = wigner_grid(SuperpositionParams(1, 0.7, 0.0, 1.0), spec)
    assert np.max(np.abs(g0.values - g1.values)) > 1e-3


def test_grid_riemann_normalization():
    spec = GridSpec.square(6.0, 256)
    for p in [SuperpositionParams(0, 0.7, 0.0, 1.0),
              SuperpositionParams(3, math.pi / 3, 0.0, 1 + 1j),
              SuperpositionParams(2, math.pi / 8, 0.5, 2.0)]:
        assert wigner_grid(p, spec).riemann_total() == pytest.approx(1.0, abs=1e-3)


def test_grid_serialization():
    spec = GridSpec(-1.0, 1.0, -0.5, 0.5, 4, 3)
    g = wigner_grid(SuperpositionParams(1, 0.8, 0.1, 0.7), spec)
    csv_text = g.to_csv()
    lines = csv_text.strip().split("\n")
    assert lines[0] == "re,im,w"
    assert len(lines) == 1 + 4 * 3
    # row-major: re index outermost, values round-trip through repr
    first = lines[1].split(",")
    assert float(first[0]) == pytest.approx(-0.75)
    assert float(first[1]) == pytest.approx(-1 / 3)
    g2 = WignerGrid.from_json(g.to_json())
    assert g2.spec == g.spec
    assert np.allclose(g2.values, g.values, rtol=0, atol=0)


def test_negative_volume_ordering_and_positivity():
    d_small = negative_volume(SuperpositionParams(1, math.pi / 8, 0.0, 0.1))
    d_big = negative_volume(SuperpositionParams(1, math.pi / 3, 0.0, 0.1))
    assert d_big > d_small > 0
    assert negative_volume(SuperpositionParams(0, 0.7, 0.0, 0.1)) > 0


def test_negative_volume_coherent_baseline():
    # oracle-built coherent fixture: displaced-parity values agree with the
    # shifted Gaussian, whose |W| integral is then taken by the same
    # quadrature as the production path
    a0 = 0.8 + 0.3j
    vec = fo.coherent_vector(a0, 64)
    gauss = lambda pts: 2 / math.pi * np.exp(-2 * np.abs(np.asarray(pts) - a0) ** 2)
    for z in (0.2 + 0.1j, -0.5, 1.0j):
        assert fo.oracle_wigner(vec, z) == pytest.approx(float(gauss([z])[0]), abs=1e-12)
    total = abs_volume(gauss, abs(a0) + 6.0, QuadratureSpec())
    assert 0.5 * (total - 1.0) == pytest.approx(0.0, abs=1e-4)


def test_negative_volume_convergence_error():
    with pytest.raises(ConvergenceError) as err:
        negative_volume(P9, QuadratureSpec(tol=1e-12, base_n=8, max_doublings=2))
    assert len(err.value.estimates) == 2


def test_evolved_reduces_to_static():
    pts = np.array([0.2 + 0.1j, -1.0 + 0.4j, 1.5j, 0.0])
    ch0 = ThermalChannel(0.0, 0.7)
    assert np.max(np.abs(
        wigner_evolved_values(P9, ch0, pts) - wigner_values(P9, pts))) <= 1e-10


def test_evolved_matches_rk4_oracle():
    cutoff = 64
    rho = fo.FockDensity.from_vector(fo.build_state(P9, cutoff))
    for kt in (0.05, 0.1):
        ch = ThermalChannel(kt, 0.2)
        out = fo.evolve_master(rho, ch, fo.min_steps(kt, 0.2, cutoff))
        spec = GridSpec.square(2.0, 7)
        pts = spec.points()
        closed = wigner_evolved_values(P9, ch, pts)
        oracle = np.array([fo.oracle_wigner_density(out, z) for z in pts])
        assert np.max(np.abs(closed - oracle)) <= 1e-5


def test_evolved_normalization_all_times():
    spec = GridSpec.square(6.0, 200)
    for kt in (0.0, 0.05, 0.1, 3.0):
        g = wigner_evolved_grid(P9, ThermalChannel(kt, 0.2), spec)
        assert g.riemann_total() == pytest.approx(1.0, abs=1e-3)


def test_negativity_decays_with_time():
    deltas = []
    for kt in (0.001, 0.05, 0.1, 3.0):
        ch = ThermalChannel(kt, 0.2)
        total = abs_volume(lambda pts: wigner_evolved_values(P9, ch, pts),
                           abs(P9.alpha0) + 6.0, QuadratureSpec())
        deltas.append(0.5 * (total - 1.0))
    assert all(deltas[i + 1] <= deltas[i] + 1e-9 for i in range(len(deltas) - 1))


def test_minimum_rises_with_temperature():
    spec = GridSpec.square(4.0, 101)
    mins = [wigner_evolved_grid(P9, ThermalChannel(0.05, nb), spec).min_value()
            for nb in (0.0, 0.5, 2.0, 8.0)]
    assert all(mins[i + 1] >= mins[i] - 1e-12 for i in range(len(mins) - 1))


def test_long_time_limit_is_thermal():
    g = wigner_evolved_grid(P9, ThermalChannel(3.0, 0.2), GridSpec.square(4.0, 64))
    assert g.min_value() >= -1e-4
    pts = g.spec.points()
    ref = np.array([thermal_wigner(0.2, z) for z in pts])
    assert np.max(np.abs(g.values.reshape(-1) - ref)) <= 1e-2


def test_channel_validation():
    with pytest.raises(ValueError):
        ThermalChannel(-0.1, 0.2)
    with pytest.raises(ValueError):
        ThermalChannel(0.1, -0.2)
    assert ThermalChannel(0.0, 0.2).gamma == 0.0
    assert 0.0 < ThermalChannel(3.0, 0.2).gamma < 1.0


def test_backends_agree():
    pts = GridSpec.square(3.5, 24).points()
    for p in [SuperpositionParams(3, math.pi / 3, 0.7, 1 + 1j),
              SuperpositionParams(2, 0.5, 0.0, 0.8, "even")]:
        ref = _kernels_values(p, pts)
        active = wigner_values(p, pts)
        assert np.max(np.abs(ref - active)) <= 1e-12
        ch = ThermalChannel(0.07, 0.4)
        ref_e = _kernels_evolved(p, ch, pts)
        active_e = wigner_evolved_values(p, ch, pts)
        assert np.max(np.abs(ref_e - active_e)) <= 1e-12


def _kernels_values(p, pts):
    from catops.phasespace import _static_weights
    from catops.state import HermiteArgs, normalization
    h = HermiteArgs.from_params(p)
    wd, wp = _static_weights(p, normalization(p))
    return _kernels.wigner_map(np.asarray(pts, dtype=complex), p.alpha0,
                               h.ladder, h.direct, h.cross, wd, wp, p.cross_sign)


def _kernels_evolved(p, ch, pts):
    from catops.phasespace import _evolved_weights
    from catops.state import HermiteArgs, normalization
    h = HermiteArgs.from_params(p)
    w, u_mix, v_width, eps = _evolved_weights(p, ch, normalization(p))
    return _kernels.wigner_evolved_map(np.asarray(pts, dtype=complex), p.alpha0,
                                       h.ladder, h.direct, h.cross,
                                       u_mix, v_width, eps, w, p.cross_sign)


def test_backend_flag(monkeypatch):
    monkeypatch.setenv("CATOPS_NUMBA", "0")
    assert backend.active_backend() == "numpy"
    monkeypatch.delenv("CATOPS_NUMBA")
    assert backend.active_backend() in ("numba", "numpy")
