"""Exception hierarchy shared by every module.

The command line maps these onto exit codes: input and parameter
problems exit with 2, internal invariant violations with 3.
"""


class GradedLieError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GradedLieError, ValueError):
    """Malformed or dimensionally inconsistent input."""


class ParameterError(InputError):
    """A model identifier violates its family bounds."""


class PreconditionError(GradedLieError, ValueError):
    """An operation was called on an object outside its domain."""


class NotNilpotentError(PreconditionError):
    """Raised when a descending series or an operator power stabilises above zero."""


class InvariantViolation(GradedLieError, AssertionError):
    """A self-check that must hold by construction failed."""


class MCSyntaxError(InputError):
    """Syntax error in a structure-equation file, with 1-based position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message
