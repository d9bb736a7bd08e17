class AvgCliqueError(Exception):
    """Base class for errors raised by this package."""


class MalformedInputError(AvgCliqueError, ValueError):
    """Graph data that violates the input format or the graph invariants."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(AvgCliqueError, ValueError):
    """A numeric argument outside the domain of a formula."""


class ConfigError(AvgCliqueError, ValueError):
    """An experiment configuration that cannot be run."""


class OracleMismatchError(AvgCliqueError, RuntimeError):
    """A decider disagreed with the brute-force oracle."""
