"""Exception hierarchy shared by every module of the package."""


class IdemError(Exception):
    """Base class for all domain errors raised by idemmat."""


class RingMismatch(IdemError, TypeError):
    pass


class UnsupportedRing(IdemError):
    """The operation needs a structure (field, Euclidean domain) the ring lacks."""


class DivisionByZero(IdemError, ZeroDivisionError):
    pass


class InvalidArgument(IdemError, ValueError):
    pass


class DimensionMismatch(IdemError, ValueError):
    pass


class SingularMatrix(IdemError):
    pass


class ConstraintViolated(IdemError):
    pass


class NotIdempotent(ConstraintViolated):
    pass


class NotComplementary(IdemError):
    pass


class NotComparable(IdemError):
    pass


class BudgetExceeded(IdemError):
    pass


class ParseError(IdemError, ValueError):
    """Malformed scalar or matrix text; ``line``/``col`` are 1-based when known."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = []
        if line is not None:
            where.append(f"line {line}")
        if col is not None:
            where.append(f"col {col}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
