"""Exception hierarchy shared across the package."""


class CommdiffError(Exception):
    """Base class for all errors raised by commdiff."""


class ParseError(CommdiffError, ValueError):
    """Malformed input text. Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyInputError(CommdiffError, ValueError):
    pass


class ValidationError(CommdiffError, ValueError):
    pass


class UnsupportedMetricError(CommdiffError, ValueError):
    """A metric was asked for on a community set it is not defined for."""


class InsufficientAlgorithmsError(CommdiffError, ValueError):
    pass


class MissingCellError(CommdiffError, ValueError):
    """A ranking grid has no value for some (algorithm, dataset) cell."""
