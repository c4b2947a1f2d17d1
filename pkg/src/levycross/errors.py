"""Exception hierarchy for the levycross package.

Every error raised on purpose by this package derives from
:class:`LevycrossError`, so callers (and the CLI) can catch one type.
Statistical outcomes (e.g. a hypothesis test rejecting) are *data*,
never exceptions.
"""

from __future__ import annotations


class LevycrossError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(LevycrossError, ValueError):
    """A parameter or precondition is outside its documented domain."""


class EmptySeriesError(InvalidParameterError):
    """An input series is empty or shorter than the documented minimum."""


class QuadratureFailureError(LevycrossError, ArithmeticError):
    """A numerical inversion integral did not converge to tolerance
    within its iteration budget."""


class RejectionBudgetError(LevycrossError, RuntimeError):
    """Rejection sampling gave up: acceptance probability below budget."""


class DegenerateVarianceError(LevycrossError, ArithmeticError):
    """A moment computation hit zero variance (constant series)."""


class OptimizerFailureError(LevycrossError, RuntimeError):
    """Maximum-likelihood optimization failed to improve on its
    starting point within the iteration budget."""


class NoCrossoverError(LevycrossError, RuntimeError):
    """No aggregation level satisfied the Gaussian-crossover criteria.

    Carries the inspected trajectory so callers can still report it.
    """

    def __init__(self, message: str, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class BadRowError(LevycrossError, ValueError):
    """A delimited input row failed to parse (carries the line number)."""

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number
