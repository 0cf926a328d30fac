"""Exception hierarchy shared by every module of the package."""


class SchneiderError(Exception):
    """Base class for all errors raised by :mod:`schneidermf`."""


class DomainError(SchneiderError, ValueError):
    """An argument lies outside the domain of the requested function."""


class InvalidPrime(DomainError):
    pass


class NotPAdicInteger(DomainError):
    pass


class NotAUnit(DomainError):
    pass


class NotInDomain(DomainError):
    """Input to the Schneider map does not lie in pZ_p."""


class EmptySequence(DomainError):
    pass


class PoleError(DomainError):
    pass


class PrecisionExhausted(SchneiderError, ArithmeticError):
    """Every trusted digit vanished; the value cannot be told apart from zero."""


class FiniteOrbit(SchneiderError, ArithmeticError):
    """The Schneider map was applied to an exact zero."""


class NumericalFailure(SchneiderError, ArithmeticError):
    """Base for iterative procedures that fail to produce an answer."""


class DivergentTail(NumericalFailure):
    pass


class BracketFailure(NumericalFailure):
    pass


class NoBracket(NumericalFailure):
    pass


class ConvergenceFailure(NumericalFailure):
    pass


class InsufficientTrustedDigits(NumericalFailure):
    pass
