"""Exception hierarchy shared by every module of the package."""


class PadicError(ArithmeticError):
    """Base class for all errors raised by padicroots."""


class ContextMismatch(PadicError):
    """Operands live in different (p, precision) contexts."""


class PrecisionExhausted(PadicError):
    """A result or comparison cannot be decided at the available precision."""


class InsufficientPrecision(PrecisionExhausted):
    """More digits were requested than an element carries."""


class ZeroDenominator(PadicError, ZeroDivisionError):
    pass


class DenominatorNotDividing(PadicError):
    """num/den does not lie in Z_p."""


class NotAUnit(PadicError):
    pass


class DivisionByHigherValuation(PadicError):
    """The divisor has larger valuation than the dividend."""


class PrimeTooLargeForEnumeration(PadicError):
    pass


class PrimeTooSmall(PadicError, ValueError):
    """Olver and SJM need p > 3."""


class SeedRejected(PadicError, ValueError):
    """The seed fails |f(x1)|_p < |f'(x1)|_p^2."""


class DenominatorValuationUnexpected(PadicError):
    """The SJM denominator does not have valuation 3*v(f'(x))."""


class NonConvergence(PadicError):
    pass


class InvariantViolated(PadicError, AssertionError):
    def __init__(self, message, n=None, quantity=None):
        super().__init__(message)
        self.n = n
        self.quantity = quantity


class InsufficientTrace(PadicError, ValueError):
    pass


class NotSquarefree(PadicError, ValueError):
    pass


class UnderflowTooFast(ArithmeticError):
    """The real iteration reached the noise floor before two ratio samples."""
