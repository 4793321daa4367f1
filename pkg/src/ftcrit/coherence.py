"""Coherence of a structure function, decided by exhaustive enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import FaultTree, State
from .structure import state_from_index, truth_table


@dataclass(frozen=True)
class MonotoneWitness:
    """phi(state) = 1 but phi(state with ``event`` failed) = 0."""

    state: dict[str, State]
    event: str


@dataclass(frozen=True)
class CoherenceReport:
    boundary_zero: bool
    boundary_one: bool
    monotone: bool
    irrelevant: frozenset[str] = frozenset()
    witness: MonotoneWitness | None = field(default=None, compare=False)

    @property
    def is_coherent(self) -> bool:
        return self.boundary_zero and self.boundary_one and self.monotone and not self.irrelevant


def _flip_pairs(table: np.ndarray, k: int):
    """Split the table into (event k working, event k failed) halves, aligned."""
    rows = table.reshape(-1, 2, 1 << k)
    return rows[:, 0, :], rows[:, 1, :]


def _violation(table: np.ndarray, ids) -> MonotoneWitness | None:
    best = None
    for k, event in enumerate(ids):
        lo, hi = _flip_pairs(table, k)
        bad = np.flatnonzero(lo & ~hi)
        if bad.size:
            a, b = divmod(int(bad[0]), 1 << k)
            s = (a << (k + 1)) | b
            if best is None or s < best[0]:
                best = (s, event)
    if best is None:
        return None
    s, event = best
    return MonotoneWitness(state_from_index(ids, s), event)


def _irrelevant(table: np.ndarray, ids) -> frozenset[str]:
    return frozenset(
        event for k, event in enumerate(ids) if np.array_equal(*_flip_pairs(table, k))
    )


def check_boundaries(tree: FaultTree, cap: int | None = None) -> tuple[bool, bool]:
    """(phi(all working) == 0, phi(all failed) == 1)."""
    table = truth_table(tree, cap)
    return bool(not table[0]), bool(table[-1])


def find_monotone_violation(tree: FaultTree, cap: int | None = None) -> MonotoneWitness | None:
    """Lowest-index state where failing one more event repairs the system.

    Ties on the state go to the earliest declared event.
    """
    return _violation(truth_table(tree, cap), tree.event_ids)


def check_monotone(tree: FaultTree, cap: int | None = None) -> bool:
    return find_monotone_violation(tree, cap) is None


def check_relevance(tree: FaultTree, cap: int | None = None) -> frozenset[str]:
    """Events whose state never changes phi."""
    return _irrelevant(truth_table(tree, cap), tree.event_ids)


def coherence_report(tree: FaultTree, cap: int | None = None) -> CoherenceReport:
    table = truth_table(tree, cap)
    witness = _violation(table, tree.event_ids)
    return CoherenceReport(
        boundary_zero=bool(not table[0]),
        boundary_one=bool(table[-1]),
        monotone=witness is None,
        irrelevant=_irrelevant(table, tree.event_ids),
        witness=witness,
    )
