"""Exception types raised across the package."""


class ExplicitLBError(Exception):
    pass


class CapacityError(ExplicitLBError, ValueError):
    """Requested size exceeds a configured budget."""


class TableRangeError(ExplicitLBError, ValueError):
    """Query outside the range covered by a precomputed table."""


class DomainError(ExplicitLBError, ValueError):
    """Arguments outside the mathematical domain of an operation."""


class PoleError(DomainError):
    pass


class NearZeroError(ExplicitLBError, ArithmeticError):
    """|L(s, chi)| is below the near-zero threshold; the log-derivative is not returned."""


class PrecisionError(ExplicitLBError, ArithmeticError):
    """Requested accuracy could not be reached.

    ``partial`` carries the best available result when there is one.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class MajorantOverflowError(ExplicitLBError, OverflowError):
    pass


class ZeroTableError(ExplicitLBError, ValueError):
    """Malformed zero-table file; ``line`` is 1-based."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MonotonicityError(ZeroTableError):
    pass


class CoverageError(ExplicitLBError, ValueError):
    pass


class NotFoundError(ExplicitLBError, LookupError):
    pass
