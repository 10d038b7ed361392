"""Exception taxonomy shared across the package.

ValueError is used for plain argument errors; everything that signals a
numerical or resource problem gets its own class so callers (and the CLI)
can map failures to exit codes.
"""


class CatopsError(Exception):
    """Base class for all package-specific failures."""


class ConsistencyError(CatopsError):
    """An internally computed quantity violated a structural guarantee
    (negative norm, large imaginary residue, variance below -1, ...).
    Signals a sign/convention bug rather than bad user input."""


class ConvergenceError(CatopsError):
    """An iterative numerical scheme failed to reach its tolerance."""

    def __init__(self, msg, estimates=None):
        super().__init__(msg)
        self.estimates = tuple(estimates) if estimates is not None else ()


class CutoffTooSmall(CatopsError):
    """A truncated number-basis construction left non-negligible weight in
    the top levels."""


class ResourceLimit(CatopsError):
    """A search exceeded its hard resource bound (e.g. maximum cutoff)."""


class IntegrationError(CatopsError):
    """Time integration drifted outside its conservation tolerance."""


class UndefinedQuantity(CatopsError):
    """The requested quantity is undefined for these parameters
    (e.g. a ratio with vanishing denominator)."""


class UnsupportedOperation(CatopsError):
    """The operation is not defined for this parameter combination."""


class ConfigError(CatopsError):
    """A run configuration failed validation; message carries the field path."""
