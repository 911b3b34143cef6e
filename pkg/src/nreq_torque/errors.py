"""Exception hierarchy shared by every module of the package."""


class TorqueError(Exception):
    """Base class for all errors raised by :mod:`nreq_torque`."""


class DomainError(TorqueError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """A special function was evaluated at (or numerically at) a pole.

    Attributes
    ----------
    nearest : int
        The non-positive integer at which the pole sits.
    """

    def __init__(self, nearest, message=None):
        self.nearest = int(nearest)
        super().__init__(message or f"pole at s = {self.nearest}")


class CapacityError(TorqueError, OverflowError):
    """A table lookup exceeded its configured capacity."""


class ResonanceSingularityError(DomainError):
    """Undamped model evaluated exactly on a real resonance."""


class UnsupportedModelError(TorqueError):
    """Model parameters outside what the torque formulas cover (omega_0 != 0)."""


class SingularReflectionError(DomainError):
    """Negative-index xi_k requested with eta = omega_c = 0."""


class ConvergenceDomainError(DomainError):
    """Series evaluated outside its disc of convergence in strict mode."""


class AccuracyError(TorqueError):
    """Requested tolerance not reached within the work budget.

    Attributes
    ----------
    best_estimate : float
    error_estimate : float
    """

    def __init__(self, message, best_estimate, error_estimate):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class ConfigError(TorqueError, ValueError):
    """Invalid run configuration (CLI / config file)."""
