"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain of an arithmetic function."""


class ZeroSeries(ZeroDivisionError):
    pass


class LeadingCoefficientNotInvertible(ArithmeticError):
    pass


class NonIntegralRecursion(ArithmeticError):
    """A recursion that must stay integral produced a non-integer."""


class WrongResidue(ValueError):
    """Weight has the wrong class mod 4 for the requested object."""


class OddWeight(ValueError):
    pass


class InsufficientPrecision(ValueError):
    pass


class NotInSpan(ArithmeticError):
    """A series is not in the span of a basis on the checked window."""


class VerificationError(AssertionError):
    """An identity that must hold exactly failed."""


class NotEvenPositiveDefinite(ValueError):
    pass


class ResourceLimit(RuntimeError):
    """Lattice enumeration exceeded its node budget."""


class UnsupportedDimension(ValueError):
    pass
