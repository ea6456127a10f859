"""Exception types shared across the package."""


class SwapBribeError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(SwapBribeError, ValueError):
    """A rule parameter or argument is invalid for the given election."""


class ValidationError(SwapBribeError, ValueError):
    """A domain object violates one of its invariants."""


class AdmissibilityError(SwapBribeError):
    """A unit swap is not admissible at its execution time."""


class InfeasibleError(SwapBribeError):
    """A requested transformation is impossible (forbidden prices)."""


class CapacityError(SwapBribeError):
    """An enumeration exceeds its configured cap; never truncated silently."""


class ReplayError(SwapBribeError):
    """A solution failed to replay to its recorded cost or winner set."""


class ParseError(SwapBribeError, ValueError):
    """A document could not be parsed; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
