"""Closed-form vs oracle equivalence suite.

Runs every closed-form quantity against the number-basis oracle over the
standard parameter grid and reports the worst relative deviation per
quantity.  Shared by the ``verify`` CLI command and the acceptance tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fockoracle, state

GRID_M = (0, 1, 2, 3, 4)
GRID_THETA = (math.pi / 8, math.pi / 4, math.pi / 3)
GRID_PHI = (0.0, math.pi / 4, math.pi / 2)
GRID_ALPHA0 = (0.3, 1.0, 1.0 + 1.0j, 2.0)
PHOTO_XIS = (0.2, 0.9)
PHOTO_N_MAX = 20

TOL_REL = 1e-8
TOL_ABS = 1e-10


@dataclass
class CheckReport:
    worst: dict            # quantity -> (relative deviation, params description)
    failures: list         # (quantity, description, closed, oracle, rel)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self):
        for name in sorted(self.worst):
            rel, where = self.worst[name]
            status = "PASS" if all(f[0] != name for f in self.failures) else "FAIL"
            yield f"{name:16s} worst rel dev {rel:.3e} at {where}  [{status}]"


def _rel(closed, oracle) -> float:
    return abs(closed - oracle) / max(abs(oracle), TOL_ABS / TOL_REL)


def run_equivalence_grid(progress=None) -> CheckReport:
    worst: dict = {}
    failures: list = []

    def record(name, desc, closed, oracle):
        rel = _rel(closed, oracle)
        if name not in worst or rel > worst[name][0]:
            worst[name] = (rel, desc)
        if abs(closed - oracle) > max(TOL_REL * abs(oracle), TOL_ABS):
            failures.append((name, desc, closed, oracle, rel))

    total = len(GRID_M) * len(GRID_THETA) * len(GRID_PHI) * len(GRID_ALPHA0)
    done = 0
    for m in GRID_M:
        for theta in GRID_THETA:
            for phi in GRID_PHI:
                for alpha0 in GRID_ALPHA0:
                    p = state.SuperpositionParams(m, theta, phi, alpha0)
                    desc = f"m={m} theta={theta:.4f} phi={phi:.4f} alpha0={alpha0}"
                    vec = fockoracle.build_state(p, fockoracle.cutoff_select(p, 1e-14))
                    record("normalization", desc,
                           state.normalization(p), vec.norm_sq())
                    record("mean_photon", desc,
                           state.mean_photon(p),
                           fockoracle.oracle_moment(vec, 1, 1).real)
                    record("moment_a2ad2", desc,
                           state.moment_a2ad2(p),
                           fockoracle.oracle_antinormal_quartic(vec))
                    record("mean_ad2", desc,
                           state.mean_ad2(p),
                           fockoracle.oracle_moment(vec, 2, 0))
                    bare = state.SuperpositionParams(0, theta, phi, alpha0)
                    bare_vec = fockoracle.build_state(bare, vec.cutoff)
                    overlap = abs(np.vdot(bare_vec.amps, vec.amps)) ** 2
                    record("fidelity", desc,
                           state.fidelity(p),
                           overlap / (vec.norm_sq() * bare_vec.norm_sq()))
                    for xi in PHOTO_XIS:
                        for n in range(PHOTO_N_MAX + 1):
                            record(f"photocount(xi={xi})", f"{desc} n={n}",
                                   state.photocount(p, xi, n),
                                   fockoracle.oracle_photocount(vec, xi, n))
                    done += 1
                    if progress is not None:
                        progress(done, total)
    return CheckReport(worst=worst, failures=failures)
