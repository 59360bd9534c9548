"""Exception types raised by the computations."""


class ComputationError(ArithmeticError):
    """Base class for failures that indicate a bad input or a bug, never a usage error."""


class NotPolynomial(ComputationError):
    """An exact division left a nonzero remainder."""


class NonIntegerResult(ComputationError):
    """A quantity that must be an integer came out fractional."""


class CoprimalityViolation(ComputationError):
    """A nonzero proper sub-dimension vector pairs to zero with the target."""


class StructureViolation(ComputationError):
    """A computed Poincare polynomial fails a structural invariant."""


class DomainError(ComputationError, ValueError):
    """Argument outside the domain of a real-valued function (e.g. log of a non-positive value)."""


class ZeroDenominator(ComputationError, ZeroDivisionError):
    pass
