"""
exceptions raised across bellmix; the CLI maps each family to an exit code.
"""


class BellmixError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BellmixError, ValueError):
    """An input lies outside the domain an operation is defined on."""


class BoundaryError(DomainError):
    """A closed form diverges at a boundary of its domain (Y = 1/2, X = 0)."""


class ConvergenceError(BellmixError):
    """An iterative solver stopped without meeting its tolerance."""

    def __init__(self, message, best=None, residual=float("inf")):
        super().__init__(message)
        self.best = best
        self.residual = residual
