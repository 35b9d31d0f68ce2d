"""Exception types shared across the package."""


class LegtorsError(Exception):
    pass


class RingMismatch(LegtorsError, TypeError):
    pass


class InexactDivision(LegtorsError, ArithmeticError):
    pass


class ZeroDivisorFound(LegtorsError, ArithmeticError):
    """Raised when an inversion meets a zero divisor; carries the factor found."""

    def __init__(self, factor, message=None):
        self.factor = factor
        super().__init__(message or f"zero divisor found, factor {factor}")


class DivisionByZero(LegtorsError, ZeroDivisionError):
    pass


class NumericPrecisionExceeded(LegtorsError, ArithmeticError):
    pass


class DomainError(LegtorsError, ValueError):
    pass


class NotTwoIntegral(DomainError):
    pass


class BadReduction(LegtorsError, ValueError):
    pass


class GeneratorValidationFailed(LegtorsError, RuntimeError):
    pass


class ParseError(LegtorsError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VerificationFailed(LegtorsError, RuntimeError):
    def __init__(self, message, items=()):
        self.items = list(items)
        super().__init__(message)
