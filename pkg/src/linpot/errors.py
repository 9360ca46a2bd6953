"""Exception hierarchy shared by all linpot modules."""


class LinpotError(Exception):
    """Base class for every error raised by linpot."""


class RangeError(LinpotError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class EvaluationError(LinpotError, ArithmeticError):
    """A function produced (or was handed) a non-finite value."""


class ConvergenceError(LinpotError, ArithmeticError):
    """Adaptive quadrature ran out of subdivisions.

    ``estimate`` and ``error`` carry the best result reached.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class DegenerateInputError(LinpotError, ValueError):
    """Input leaves nothing to compute (e.g. every sample excluded)."""


class StabilityError(LinpotError, ArithmeticError):
    """Propagation drifted beyond the allowed norm change."""


class BoundaryContaminationError(LinpotError, RuntimeError):
    """A tracked feature entered the tapered boundary region."""
