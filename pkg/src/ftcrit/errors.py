"""Exception hierarchy shared by every ftcrit module.

Each exception carries a ``kind`` (its class name) so the CLI can print a
single machine-parsable ``error: KIND: detail`` line.
"""

from __future__ import annotations


class FaultTreeError(Exception):
    """Base class for all analysis errors."""

    @property
    def kind(self) -> str:
        return type(self).__name__


# -- model validation --------------------------------------------------------


class ModelError(FaultTreeError):
    """A fault tree failed structural validation."""

    def __init__(self, message: str, event_id: str | None = None):
        super().__init__(message)
        self.event_id = event_id


class DuplicateEventId(ModelError):
    pass


class DanglingReference(ModelError):
    pass


class UnusedEvent(ModelError):
    pass


class EmptyTree(ModelError):
    pass


class InvalidEvent(ModelError):
    """Bad event id, or a negative / non-finite rate."""


# -- evaluation ----------------------------------------------------------------


class TooManyEvents(FaultTreeError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"{n} events exceed the enumeration cap of {cap}")
        self.n = n
        self.cap = cap


class MissingState(FaultTreeError):
    pass


class UnknownEvent(FaultTreeError):
    pass


class SameIndex(FaultTreeError):
    pass


# -- probability ---------------------------------------------------------------


class ProbabilityOutOfRange(FaultTreeError):
    pass


class NegativeRate(FaultTreeError):
    pass


class NegativeTime(FaultTreeError):
    pass


class TooManyCuts(FaultTreeError):
    def __init__(self, m: int, cap: int):
        super().__init__(f"{m} cut sets exceed the inclusion-exclusion cap of {cap}")
        self.m = m
        self.cap = cap


class NumericalInstability(FaultTreeError):
    pass


# -- cut sets ------------------------------------------------------------------


class NotFreeViolation(FaultTreeError):
    """The operation needs a NOT-free tree."""


class ExpansionTooLarge(FaultTreeError):
    pass


# -- importance / simulation ---------------------------------------------------


class SystemNeverFails(FaultTreeError):
    pass


class TheoremViolation(FaultTreeError):
    """A relative-importance verdict disagreed with the direct values.

    Raised only if the implementation is wrong; the ordering result is a theorem.
    """


class NoFailureSamples(FaultTreeError):
    pass
