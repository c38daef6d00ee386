"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CKError(Exception):
    """Base class for every error raised by ckrep."""


class MalformedInputError(CKError, ValueError):
    """Input is not a square bit matrix, vector, word, ... as required."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DomainError(CKError, ValueError):
    """A value lies outside the domain of an operation."""


class ZeroMonomialError(DomainError):
    """The word pair (J, K) gives the zero element s_J s_K* = 0."""


class PreconditionError(CKError, ValueError):
    """A structural precondition (irreducibility, admissibility) fails."""


class ConvergenceError(CKError, ArithmeticError):
    """Iteration cap reached; the last iterate is attached."""

    def __init__(self, message: str, last_iterate=None, last_value=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.last_value = last_value


class NotInLambdaError(CKError):
    """The parameter vector is not in the solution set of PFE(diag(a) A) = 1."""

    def __init__(self, residual):
        super().__init__(f"not in Lambda(A): PFE(diag(a)A) - 1 = {float(residual):.3e}")
        self.residual = residual


class NoSolutionError(CKError):
    """No sign change of PFE - 1 over the bisection bracket."""


class ResourceError(CKError):
    """A configured size cap was exceeded."""


class ConsistencyError(CKError, AssertionError):
    """An internal invariant failed; indicates a bug."""
