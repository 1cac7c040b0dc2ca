"""
Error Types
-----------
Every failure raised by the analyzers derives from SeqCubeError. Each class
carries the exit code the command-line surface reports for it.
"""


class SeqCubeError(Exception):
    exit_code = 3


class ParseError(SeqCubeError):
    """Malformed sequence text (bad character, wrong length, duplicate position)."""

    exit_code = 2


class InputError(SeqCubeError):
    """Semantically invalid argument: out-of-range value, period mismatch, overlap."""

    exit_code = 3


class PreconditionError(InputError):
    pass


class ConstructionError(InputError):
    pass


class UnsupportedConfigurationError(InputError):
    """Counting configuration outside the side conditions of the closed forms."""


class BudgetExceededError(SeqCubeError):
    exit_code = 4

    def __init__(self, message, required=None, limit=None):
        """
        :param message: str - Human readable diagnostic.
        :param required: int - Patterns (or weight) the request would need.
        :param limit: int - The configured cap that was exceeded.
        """
        super().__init__(message)
        self.required = required
        self.limit = limit


class InvariantViolation(SeqCubeError):
    """Two independent computations disagreed. Always a bug."""

    exit_code = 5
