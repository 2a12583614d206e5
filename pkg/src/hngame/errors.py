"""Exception hierarchy.

Every error carries a short machine-readable ``code`` (the class name) and an
optional ``witness`` with the offending elements, so the CLI can print
structured diagnostics.
"""

from __future__ import annotations

from typing import Any


class HNError(Exception):
    """Base class for all domain errors raised by the engine."""

    def __init__(self, message: str = "", witness: Any = None):
        super().__init__(message or self.__class__.__name__)
        self.witness = witness

    @property
    def code(self) -> str:
        return self.__class__.__name__


class ParseError(HNError):
    """A game file could not be read or does not follow the schema."""


# lattice-core
class NotAPartialOrder(HNError):
    pass


class NotALattice(HNError):
    pass


class TrivialLattice(HNError):
    pass


class DuplicateLabel(HNError):
    pass


class UnknownLabel(HNError):
    pass


class NotStrictlyOrdered(HNError):
    pass


class NotAChain(HNError):
    pass


# value-domain
class ModeMismatch(HNError):
    pass


class EmptySet(HNError):
    pass


class PartialDomainUnsupported(HNError):
    pass


# game-engine
class MissingWeight(HNError):
    pass


class UnexpectedWeight(HNError):
    pass


class TopNotAllowed(HNError):
    pass


class NotConvex(HNError):
    pass


class NoGreatestDestabilizer(HNError):
    pass


class NotSemistable(HNError):
    pass


class NotSlopeLike(HNError):
    pass


class InfiniteTopSlope(HNError):
    pass


class InvariantViolation(HNError):
    """A theorem-backed internal assertion failed. Indicates an engine bug."""


# instances
class RankNotMonotone(HNError):
    pass


class ZeroRankNonPositiveDegree(HNError):
    pass


class InvariantFactorChain(HNError):
    pass


class FreeRankUnsupported(HNError):
    pass


class OrderCapExceeded(HNError):
    pass


# oracle
class SizeCap(HNError):
    pass


class RejectionBudgetExceeded(HNError):
    pass
