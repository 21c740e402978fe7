"""Exception hierarchy shared by every module of the package."""


class MagmaError(Exception):
    """Base class for all errors raised by magmadual."""


class OrderError(MagmaError, ValueError):
    """The order of the carrier set is not a positive integer."""


class RangeError(MagmaError, ValueError):
    """An element, label or code lies outside its admissible range."""


class ShapeError(MagmaError, ValueError):
    """Rows of a table are ragged or have the wrong count."""


class ParseError(MagmaError, ValueError):
    """Malformed table file. Carries the 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class CodeOverflowError(MagmaError, OverflowError):
    """n ** (n * n) does not fit in 64 bits, so no OpCode exists."""


class OrderMismatchError(MagmaError, ValueError):
    """Two tables of different order were combined."""


class BudgetError(MagmaError, RuntimeError):
    """A search exceeded its node or time budget."""


class MethodError(MagmaError, ValueError):
    """A dual computation method was requested outside its domain."""


class NoIdentityError(MagmaError, ValueError):
    """The operation has no two-sided identity."""


class NotMonoidError(MagmaError, ValueError):
    pass


class NotGroupError(MagmaError, ValueError):
    pass


class NotInDualError(MagmaError, ValueError):
    pass


class VerificationError(MagmaError, AssertionError):
    """An internal cross-check failed. Always indicates a bug."""
