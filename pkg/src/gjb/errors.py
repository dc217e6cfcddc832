"""Exception hierarchy for the gjb package.

Every error subclasses :class:`GJBError` and a matching builtin so callers
can catch either narrowly or broadly.
"""


class GJBError(Exception):
    """Base class for all gjb errors."""


class DomainError(GJBError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class DegenerateSampleError(GJBError, ValueError):
    """A sample is empty, constant, or otherwise unusable."""


class SingularCovarianceError(GJBError, ArithmeticError):
    """The asymptotic covariance matrix is (numerically) singular."""


class SampleParseError(GJBError, ValueError):
    """A data file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class EmptyInputError(GJBError, ValueError):
    """A data file contained no usable values."""
