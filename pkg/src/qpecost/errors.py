"""Exception taxonomy.

The CLI maps these to exit codes: configuration problems exit with 1,
numeric failures with 2. Everything derives from Error so callers can
catch package failures broadly without swallowing stdlib exceptions.
"""


class Error(Exception):
    """Base class for all package errors."""


class DomainError(Error):
    """Inputs outside the documented domain (bad norms, negative widths, ...)."""


class UnattainableTargetError(DomainError):
    """No finite protocol plan reaches the requested variance target."""


class NonInformativeMeasurementError(DomainError):
    """Measurement correction factor is not positive: outcomes carry no signal."""


class SingularOutcomeError(Error):
    """Zero-probability outcome with nonzero sensitivity: the CFI diverges."""


class NumericError(Error):
    """A numeric routine failed to converge or left its valid regime.

    `achieved` carries the tolerance actually reached when convergence
    failed, so callers can decide whether the partial result is usable.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class StructuralError(NumericError):
    """A computed matrix violates the symmetry pattern it must have."""


class ConfigError(Error):
    """Malformed configuration file or command-line arguments."""
