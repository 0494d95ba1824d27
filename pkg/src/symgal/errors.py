"""Exception hierarchy shared by all symgal modules."""


class SymgalError(Exception):
    """Base class for every error raised by symgal."""


class DivisionByZero(SymgalError, ZeroDivisionError):
    def __init__(self, dividend, divisor=None):
        self.dividend = dividend
        self.divisor = divisor
        super().__init__(f"division by zero: ({dividend}) / ({divisor})")


class DimensionMismatch(SymgalError, ValueError):
    pass


class NonSquareMatrix(DimensionMismatch):
    pass


class ZeroPolynomialError(SymgalError, ValueError):
    pass


class ParseError(SymgalError, ValueError):
    """Syntax error in an expression, with the byte offset of the failure."""

    def __init__(self, message, offset=None, location=None):
        self.message = message
        self.offset = offset
        self.location = location
        where = []
        if location is not None:
            where.append(f"entry {location}")
        if offset is not None:
            where.append(f"offset {offset}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


class ZeroDenominatorError(ParseError):
    pass


class UnsupportedDenominator(ParseError):
    """A vector-field component divides by an expression depending on y."""


class VanishingConstantTerm(SymgalError, ValueError):
    """Maclaurin expansion requested about a point of the polar set."""


class SingularMatrix(SymgalError, ValueError):
    pass


class NonConstantCoefficients(SymgalError, ValueError):
    pass


class InvariantViolation(SymgalError, RuntimeError):
    """An internal consistency check failed (arithmetic bug or bad input)."""


class NonConstantCharpoly(InvariantViolation):
    pass


class CoefficientOverflow(SymgalError, OverflowError):
    """Integer growth exceeded the cap set by SYMGAL_MAX_COEFF_BITS."""
