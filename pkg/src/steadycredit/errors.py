"""Exception types shared across the package."""


class SteadyCreditError(ValueError):
    """Base class for all domain validation and estimation failures."""


class ParseError(SteadyCreditError):
    """Malformed CSV or scenario input; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class ContiguityError(SteadyCreditError):
    """Quarterly series has a gap or is out of order."""


class InvariantError(SteadyCreditError):
    """A domain invariant is violated."""


class WindowError(SteadyCreditError):
    """Analysis window is invalid, empty, or outside the series span."""


class ColumnAbsentError(SteadyCreditError):
    """Operation needs an optional column the series does not carry."""


class EstimationError(SteadyCreditError):
    """Data is insufficient or degenerate for the requested estimator."""
