"""Exception hierarchy shared by every module.

The CLI maps ``DomainError`` subclasses to exit code 2 and
``NoConvergence`` to exit code 3.
"""


class CollarError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(CollarError, ValueError):
    """Input outside the domain of an operation."""


class DomainTooLarge(DomainError):
    pass


class NegativeComponent(DomainError):
    pass


class EmptySection(DomainError):
    pass


class NonPositiveLength(DomainError):
    pass


class NegativeLength(DomainError):
    pass


class Inconsistent(DomainError):
    pass


class OutOfDomain(DomainError):
    pass


class NotOnH(DomainError):
    pass


class NotInDelta(DomainError):
    pass


class StepTooLarge(DomainError):
    pass


class NegativeMeasure(DomainError):
    pass


class DegenerateA(DomainError):
    pass


class NotHyperbolic(DomainError):
    pass


class UnsupportedWord(DomainError):
    pass


class WordParseError(DomainError):
    pass


class NoConvergence(CollarError, ArithmeticError):
    """An iterative solver exhausted its iteration budget."""


class GridTooCoarse(CollarError):
    """A lattice search could not resolve the optimum on its grid."""
