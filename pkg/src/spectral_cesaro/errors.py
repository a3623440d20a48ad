"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside the supported parameter set."""


class DomainError(ValueError):
    """An evaluation point lies outside the operation's domain."""


class DataError(ValueError):
    """The supplied measure or table does not contain enough data."""


class UnsupportedOrderError(ValueError):
    """A derivative or expansion order beyond what is available analytically.

    Finite-difference fallbacks are never silent; use
    :func:`spectral_cesaro.testfn.finite_difference_derivative` explicitly.
    """


class SingularityError(ValueError):
    """Evaluation requested on or too close to a singular set."""

    def __init__(self, message, distance=None):
        super().__init__(message)
        self.distance = distance


class BoundaryError(ValueError):
    """Evaluation requested within tolerance of a piecewise-region boundary."""


class AccuracyError(ArithmeticError):
    """Numerical routine failed to reach the requested tolerance.

    Carries the best available estimate so callers can decide whether to
    proceed anyway.
    """

    def __init__(self, message, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
