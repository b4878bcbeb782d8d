"""Exception types raised across the package."""

from __future__ import annotations


class KFGError(Exception):
    """Base class for all package errors."""


class UniverseTooLarge(KFGError):
    pass


class BaseDoesNotCoverUniverse(KFGError):
    pass


class InvalidTopology(KFGError):
    pass


class UniverseMismatch(KFGError):
    pass


class UnknownWord(KFGError):
    pass


class NotAPartialOrder(KFGError):
    pass


class NotContained(KFGError):
    pass


class NoMatch(KFGError):
    pass


class MultipleMatch(KFGError):
    pass


class NoWitnessFound(KFGError):
    pass


class MissingWitness(KFGError):
    pass


class OracleLimitExceeded(KFGError):
    pass


class NotFoundWithinBound(KFGError):
    pass


class UnknownSuite(KFGError):
    pass


class StaleCache(KFGError):
    pass


class MeetMismatch(KFGError):
    pass
