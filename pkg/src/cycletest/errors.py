"""Exception types shared across the package."""


class CycleTestError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CycleTestError, ValueError):
    """Malformed or out-of-contract input (bad labels, empty source, ...)."""


class ParseError(InputError):
    """Unreadable line in an edge-list source; carries the line number."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ParameterError(CycleTestError, ValueError):
    """Model parameters that produce invalid probabilities."""


class SizeError(CycleTestError, ValueError):
    """Operation requested on a graph outside its supported size range."""
