"""Exception types raised across the package."""


class G24Error(Exception):
    """Base class for all package errors."""


class DivisionByZero(G24Error, ZeroDivisionError):
    pass


class PoleAtValue(G24Error, ZeroDivisionError):
    pass


class NegativeValuation(G24Error, ValueError):
    pass


class BadIndex(G24Error, ValueError):
    pass


class UnsupportedShape(G24Error, ValueError):
    pass


class BadWeight(G24Error, ValueError):
    pass


class EvalSingular(G24Error, ZeroDivisionError):
    pass


class BoundExceeded(G24Error, ValueError):
    pass


class ParseError(G24Error, ValueError):
    """Syntax error in the test-function language, carrying a 1-based position."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
