"""Exception types shared across the package."""

from __future__ import annotations


class PaircompError(Exception):
    """Base class for all package errors."""


class BadDimension(PaircompError):
    pass


class BadIndex(PaircompError):
    pass


class BadValue(PaircompError):
    pass


class BadScale(PaircompError):
    pass


class IncompleteMatrix(PaircompError):
    pass


class MissingPrerequisite(PaircompError):
    pass


class NoConvergence(PaircompError):
    pass


class MalformedMatrix(PaircompError):
    pass


class DimensionMismatch(PaircompError):
    pass


class DegenerateIntensities(PaircompError):
    pass


class Unreachable(PaircompError):
    pass


class DuplicateLabels(PaircompError):
    pass


class WrongState(PaircompError):
    pass


class ValueNotInScale(PaircompError):
    pass


class IllegalRevisionTarget(PaircompError):
    pass


class SessionIncomplete(PaircompError):
    pass


class NoCompletedSessions(PaircompError):
    pass


class MissingVariance(UserWarning):
    """Signaled (not raised) when a single-expert aggregate has no variance."""
