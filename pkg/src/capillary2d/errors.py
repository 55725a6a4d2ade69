"""Exception hierarchy shared by every module."""


class CapillaryError(Exception):
    """Base class for all errors raised by capillary2d."""


class DomainError(CapillaryError, ValueError):
    """An argument lies outside the set on which the operation is defined."""


class InfeasibleConfigurationError(DomainError):
    """A plate inclination is not attained on the requested solution curve."""


class ConvergenceError(CapillaryError, ArithmeticError):
    """A numerical tolerance could not be met.

    ``best_estimate`` and ``error_estimate`` hold the last values reached
    before giving up (``None`` when no estimate exists, e.g. step underflow).
    """

    def __init__(self, message, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class NoSolutionError(CapillaryError):
    """The inverse plate problem has no solution in the scanned range.

    ``attainable`` is the ``(min, max)`` separation reached by the scan.
    """

    def __init__(self, message, attainable=None):
        super().__init__(message)
        self.attainable = attainable
