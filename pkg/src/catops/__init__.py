"""Nonclassicality diagnostics of superposed-operation cat states.

Closed-form quantities (normalization, fidelity, counting moments,
squeezing, photocount distribution, quasiprobability values and their
thermal decay) cross-validated against an independent truncated
number-basis oracle.
"""

from .errors import (
    CatopsError,
    ConfigError,
    ConsistencyError,
    ConvergenceError,
    CutoffTooSmall,
    IntegrationError,
    ResourceLimit,
    UndefinedQuantity,
    UnsupportedOperation,
)
from .phasespace import (
    GridSpec,
    QuadratureSpec,
    ThermalChannel,
    WignerGrid,
    negative_volume,
    thermal_wigner,
    wigner,
    wigner_evolved,
    wigner_evolved_grid,
    wigner_evolved_values,
    wigner_grid,
    wigner_values,
)
from .state import (
    N_MAX,
    Parity,
    SuperpositionParams,
    fidelity,
    mandel_q,
    mean_ad2,
    mean_photon,
    moment_a2ad2,
    normalization,
    photocount,
    squeezing,
)

__all__ = [
    "CatopsError", "ConfigError", "ConsistencyError", "ConvergenceError",
    "CutoffTooSmall", "IntegrationError", "ResourceLimit",
    "UndefinedQuantity", "UnsupportedOperation",
    "GridSpec", "QuadratureSpec", "ThermalChannel", "WignerGrid",
    "negative_volume", "thermal_wigner", "wigner", "wigner_evolved",
    "wigner_evolved_grid", "wigner_evolved_values", "wigner_grid",
    "wigner_values",
    "N_MAX", "Parity", "SuperpositionParams", "fidelity", "mandel_q",
    "mean_ad2", "mean_photon", "moment_a2ad2", "normalization",
    "photocount", "squeezing",
]

__version__ = "0.1.0"
