"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class BandedTPError(Exception):
    """Base class for every error raised by this package."""


class ContractViolationError(BandedTPError, ValueError):
    """An argument violates a documented precondition (shape, range, order)."""


class PreconditionError(BandedTPError, ValueError):
    """A mathematical hypothesis of the requested operation does not hold."""


class CapacityError(BandedTPError, RuntimeError):
    """Input exceeds a configured exhaustive-enumeration cap.

    Raised instead of silently truncating; caps are configurable, see
    :mod:`bandedtp.config`.
    """


class NotBTPError(BandedTPError, ArithmeticError):
    """Bidiagonal elimination met a nonpositive pivot or multiplier.

    ``position`` is the 1-based (row, column) coordinate whose elimination
    step failed; ``value`` is the offending pivot/multiplier when defined.
    """

    def __init__(self, message: str, position: tuple[int, int], value=None):
        super().__init__(message)
        self.position = position
        self.value = value


class MultipleEigenvalueError(BandedTPError, ArithmeticError):
    """The characteristic polynomial is not square-free."""


class SpectralInconsistencyError(BandedTPError, ArithmeticError):
    """Boundary kernel extraction failed at a reported eigenvalue.

    Signals precision loss: retry with a larger ``precision_bits``.
    """


class ParseError(BandedTPError, ValueError):
    """A document failed to parse; carries the offending coordinate."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        loc = ""
        if row is not None:
            loc = f" (row {row}" + (f", col {col}" if col is not None else "") + ")"
        super().__init__(message + loc)
        self.row = row
        self.col = col
