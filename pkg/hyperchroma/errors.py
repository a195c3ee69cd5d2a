"""Exception types raised by hyperchroma."""


class HyperchromaError(Exception):
    """Base class for all hyperchroma errors."""


class InvalidParameterError(HyperchromaError, ValueError):
    """A numeric or structural parameter is outside its admissible range."""


class ParseError(HyperchromaError, ValueError):
    """Malformed text input.

    Attributes:
        line: 1-based line number of the offending line (0 when not tied to a line)
    """

    def __init__(self, message: str, line: int = 0) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class PreconditionError(HyperchromaError, ValueError):
    """An operation was called on inputs it is not defined for."""


class UnsupportedInstanceError(HyperchromaError, ValueError):
    """The instance is well formed but outside what the algorithm handles."""


class BudgetExceededError(HyperchromaError, RuntimeError):
    """An exhaustive search would exceed its size or time budget."""


class InternalError(HyperchromaError, RuntimeError):
    """A result failed a check that must always pass."""
