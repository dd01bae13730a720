"""Exception hierarchy shared by every module.

The CLI maps any :class:`EllCensusError` to exit code 2 and prints the class
name, so the names here are part of the user-facing contract.
"""


class EllCensusError(Exception):
    """Base class for all computation errors raised by the package."""


class DomainError(EllCensusError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EmptyDomainError(DomainError):
    pass


class OutOfRangeError(DomainError):
    """The input exceeds the range in which a result is certified."""


class FactorizationTimeout(EllCensusError):
    """Pollard rho failed to split a composite within its iteration budget."""


class SmallCharacteristicError(DomainError):
    pass


class BadReductionError(DomainError):
    """The prime divides the discriminant; the reduction is singular."""


class InvalidPointError(DomainError):
    pass


class OracleBoundError(DomainError):
    """A brute-force routine was asked to run above its size limit."""


class AmbiguousOrderError(EllCensusError):
    pass


class UndecidedStructureError(EllCensusError):
    pass


class UndefinedEvaluationError(DomainError):
    pass


class DegenerateEvaluation(EllCensusError):
    """Raised internally when a division-polynomial step divides by zero."""


class CyclicityRequiredError(EllCensusError):
    pass


class NumericIntegrityError(EllCensusError):
    """A character sum did not round to an integer within tolerance."""


class DiscreteLogError(EllCensusError):
    pass


class InvalidDiscriminantError(DomainError):
    pass


class InsufficientDataError(EllCensusError):
    pass


class ConfigurationError(EllCensusError):
    pass
