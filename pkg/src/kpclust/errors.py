"""Exception hierarchy.

Validation problems derive from ``ValueError`` so callers that only care
about bad input can catch the builtin. Refusals (budget caps, singular or
tied targets) are a separate branch: the input is well formed but the
requested computation would not honour the exactness contract.
"""


class KPClustError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(KPClustError, ValueError):
    pass


class InvalidPointError(ValidationError):
    pass


class InvalidExponentError(ValidationError):
    pass


class MetricAxiomError(ValidationError):
    pass


class EmptySetError(ValidationError):
    pass


class EmptyFamilyError(ValidationError):
    pass


class EmptySampleError(ValidationError):
    pass


class InvalidBurnInError(ValidationError):
    pass


class SpaceMismatchError(ValidationError):
    pass


class InvalidMeasureError(ValidationError):
    pass


class EmptyDomainError(ValidationError):
    pass


class InvalidChainError(ValidationError):
    pass


class RefusalError(KPClustError):
    """Well-formed request that the exactness contract forbids answering."""


class BudgetExceededError(RefusalError):
    pass


class SingularTargetError(RefusalError):
    pass


class NonUniqueElbowError(RefusalError):
    pass


class InexactReferenceError(RefusalError):
    pass
