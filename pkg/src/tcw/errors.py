"""Exception types shared across the workbench."""


class TcwError(Exception):
    """Base class for every error raised by this package."""


class ParseError(TcwError, ValueError):
    """Raised on malformed formula text. Carries the character offset."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class SortError(TcwError, ValueError):
    """Raised on sort mismatches or use of a symbol outside the signature."""


class EvalError(TcwError, ValueError):
    """Raised when a formula cannot be evaluated in an interpretation."""


class TheoryError(TcwError, ValueError):
    """Raised for malformed theory descriptions or bad operator inputs."""


class OracleExhausted(TcwError):
    """A sequence oracle was asked for a value beyond its known prefix."""

    def __init__(self, oracle, index, message=None):
        self.oracle = oracle
        self.index = index
        super().__init__(message or f"oracle {oracle!r} has no value at index {index}")


class BudgetExceeded(TcwError):
    """The brute-force enumeration went past its work budget."""


class WitnessError(TcwError):
    """No witness could be built (e.g. no all-finite minimal model)."""
