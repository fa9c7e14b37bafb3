"""Exception hierarchy shared by all estimator modules."""


class PolyestError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PolyestError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class DegenerateIntervalError(DomainError):
    """The approximation interval collapsed (left end >= right end)."""


class ParseError(PolyestError, ValueError):
    """Malformed input file or violated fingerprint invariant."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UndefinedEstimatorError(PolyestError, ArithmeticError):
    """The estimator has no value on this sample (e.g. zero coverage)."""


class NumericalError(PolyestError, ArithmeticError):
    """A numerical routine broke down; ``diagnostics`` holds details."""

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class ConvergenceError(NumericalError):
    """Iteration cap reached before the stopping rule was met.

    The best iterate seen so far is attached as ``best``.
    """

    def __init__(self, message, best=None, **diagnostics):
        super().__init__(message, **diagnostics)
        self.best = best
