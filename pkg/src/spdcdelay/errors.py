"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration problems exit with 2,
numerical failures with 3, fit non-convergence with 4.
"""


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration (schema, units, scheme)."""


class DispersionRangeError(ValueError):
    """Sellmeier evaluation requested outside the validity range of the data."""


class EvanescentWaveError(ValueError):
    """Transverse wavevector too large for a propagating wave, |q| > n*omega/c."""


class GridMismatchError(ValueError):
    """Arrays defined on incompatible or non-uniform grids."""


class SolverError(RuntimeError):
    """Root finding failed (no sign change in bracket, no convergence)."""


class FitError(RuntimeError):
    """Histogram fit failed to converge; carries the best residual seen."""

    def __init__(self, message, best_cost=None):
        super().__init__(message)
        self.best_cost = best_cost
