"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CayleyHamError(Exception):
    """Base class for all errors raised by this package."""


# group construction / arithmetic
class InvalidSpec(CayleyHamError):
    pass


class InvalidAction(InvalidSpec):
    pass


class NotAGroup(InvalidSpec):
    pass


class NotPrimitiveRoot(InvalidSpec):
    pass


class NotNormal(CayleyHamError):
    pass


class InvalidElement(CayleyHamError):
    pass


# digraphs
class IdentityInS(CayleyHamError):
    pass


class DuplicateGenerator(CayleyHamError):
    pass


# searches
class BudgetExceeded(CayleyHamError):
    pass


class NotTwoGenerated(CayleyHamError):
    pass


class PatternLimitExceeded(CayleyHamError):
    pass


# constructions
class PreconditionFailed(CayleyHamError):
    """A construction was called outside the hypotheses that make it valid."""


class NotAbelian(PreconditionFailed):
    pass


class NotConnected(PreconditionFailed):
    pass


class NotGenerating(PreconditionFailed):
    pass


class CommutatorNotContained(PreconditionFailed):
    pass


class NotHamCycleInQuotient(PreconditionFailed):
    pass


class SkewedSetNotGeneratingK(PreconditionFailed):
    pass


class NotCyclicNormal(PreconditionFailed):
    pass


class ArcNotInDigraph(PreconditionFailed):
    pass


class ImprovementStalled(CayleyHamError):
    pass


class ConstructionFailed(CayleyHamError):
    """A construction produced a walk that did not verify."""


# families
class BadPrime(CayleyHamError):
    pass


class ConditionFailed(CayleyHamError):
    def __init__(self, clause: str, message: str):
        super().__init__(f"condition ({clause}) fails: {message}")
        self.clause = clause


class SerializationError(CayleyHamError):
    pass
