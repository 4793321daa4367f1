"""Component importance measures and relative-importance comparison.

Every measure is a combination of system unreliabilities with one or two
components forced to a fixed state, computed on the same exact path as
:func:`ftcrit.prob.probability`.

Two orientations are offered for the ratio measures:

``STANDARD``
    Fussell-Vesely and risk reduction worth compare against the system with
    the component made perfect (forced working); risk achievement worth
    compares the system with the component forced failed.
``PAPER_LITERAL``
    The swapped forcings: FV and RRW use the component forced failed, RAW
    uses it forced working. For coherent trees this gives FV <= 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import SameIndex, SystemNeverFails, TheoremViolation, UnknownEvent
from .model import FaultTree, State, event_sort_key
from .prob import event_probabilities, probability
from .structure import Model, as_view, force, truth_table

F, W = State.FAILED, State.WORKING
MIXED_TOLERANCE = 1e-12
VERDICT_TOLERANCE = 1e-12


class Orientation(enum.Enum):
    STANDARD = "standard"
    PAPER_LITERAL = "paper_literal"


class Measure(enum.Enum):
    BIRNBAUM = "birnbaum"
    FUSSELL_VESELY = "fussell_vesely"
    RRW = "rrw"
    RAW = "raw"


class MixedSign(enum.Enum):
    NON_NEGATIVE_EVERYWHERE = "NonNegativeEverywhere"
    INDETERMINATE = "Indeterminate"


class ProbOrdering(enum.Enum):
    I_LE_J = "i_le_j"
    J_LE_I = "j_le_i"
    EQUAL = "equal"


class Verdict(enum.Enum):
    I_LE_J = "ILeJ"
    J_LE_I = "JLeI"
    INAPPLICABLE = "TheoremInapplicable"


def _check_event(model: Model, i: str) -> None:
    if i not in as_view(model).tree.index:
        raise UnknownEvent(f"unknown event {i}")


def _check_pair(model: Model, i: str, j: str) -> None:
    _check_event(model, i)
    _check_event(model, j)
    if i == j:
        raise SameIndex(f"components must differ, got {i} twice")


# -- Birnbaum and second order -------------------------------------------------


def birnbaum_at(model: Model, probs: Mapping[str, float], i: str) -> float:
    """P(top | i failed) - P(top | i working) at the given event probabilities."""
    _check_event(model, i)
    return probability(force(model, {i: F}), probs) - probability(force(model, {i: W}), probs)


def birnbaum(tree: Model, t: float, i: str) -> float:
    return birnbaum_at(tree, event_probabilities(as_view(tree).tree, t), i)


def mixed_second(model: Model, probs: Mapping[str, float], i: str, j: str) -> float:
    """Second mixed partial of the unreliability in p_i and p_j."""
    _check_pair(model, i, j)
    terms = [
        probability(force(model, {i: F, j: F}), probs),
        -probability(force(model, {i: F, j: W}), probs),
        -probability(force(model, {i: W, j: F}), probs),
        probability(force(model, {i: W, j: W}), probs),
    ]
    return math.fsum(terms)


def permutation_equivalent(tree: Model, i: str, j: str, cap: int | None = None) -> bool:
    """phi(1_i, 0_j, x) == phi(0_i, 1_j, x) for every residual state x."""
    _check_pair(tree, i, j)
    a = truth_table(force(tree, {i: F, j: W}), cap)
    b = truth_table(force(tree, {i: W, j: F}), cap)
    return bool(np.array_equal(a, b))


def mixed_partial_sign(tree: Model, i: str, j: str, cap: int | None = None) -> MixedSign:
    """Sign of the mixed partial over every probability vector in [0, 1]^n.

    The mixed partial is affine in each remaining p_k, so its minimum over the
    unit box (and over any grid containing 0 and 1) is reached at a 0/1
    vertex, where it equals the four-term combination of structure-function
    values. Checking every vertex is therefore an exact certificate.
    """
    _check_pair(tree, i, j)
    tables = [
        truth_table(force(tree, {i: a, j: b}), cap).astype(np.int8)
        for a, b in ((F, F), (F, W), (W, F), (W, W))
    ]
    delta = tables[0] - tables[1] - tables[2] + tables[3]
    if delta.min() >= -MIXED_TOLERANCE:
        return MixedSign.NON_NEGATIVE_EVERYWHERE
    return MixedSign.INDETERMINATE


# -- ratio measures --------------------------------------------------------------


def fussell_vesely_at(
    tree: Model, probs, i: str, orientation: Orientation = Orientation.STANDARD
) -> float:
    _check_event(tree, i)
    total = probability(tree, probs)
    if total == 0:
        raise SystemNeverFails("Fussell-Vesely is undefined when the system never fails")
    state = W if orientation is Orientation.STANDARD else F
    return (total - probability(force(tree, {i: state}), probs)) / total


def rrw_at(tree: Model, probs, i: str, orientation: Orientation = Orientation.STANDARD) -> float:
    _check_event(tree, i)
    total = probability(tree, probs)
    state = W if orientation is Orientation.STANDARD else F
    reduced = probability(force(tree, {i: state}), probs)
    if reduced == 0:
        return 1.0 if total == 0 else math.inf
    return total / reduced


def raw_at(tree: Model, probs, i: str, orientation: Orientation = Orientation.STANDARD) -> float:
    _check_event(tree, i)
    total = probability(tree, probs)
    state = F if orientation is Orientation.STANDARD else W
    achieved = probability(force(tree, {i: state}), probs)
    if total == 0:
        if achieved == 0:
            return 1.0
        raise SystemNeverFails("achievement worth is undefined when the system never fails")
    return achieved / total


def fussell_vesely(tree: Model, t: float, i: str, orientation: Orientation = Orientation.STANDARD) -> float:
    return fussell_vesely_at(tree, event_probabilities(as_view(tree).tree, t), i, orientation)


def rrw(tree: Model, t: float, i: str, orientation: Orientation = Orientation.STANDARD) -> float:
    return rrw_at(tree, event_probabilities(as_view(tree).tree, t), i, orientation)


def raw(tree: Model, t: float, i: str, orientation: Orientation = Orientation.STANDARD) -> float:
    return raw_at(tree, event_probabilities(as_view(tree).tree, t), i, orientation)


# -- reports and ranking ---------------------------------------------------------


@dataclass(frozen=True)
class ComponentImportance:
    event: str
    birnbaum: float
    fussell_vesely: float
    rrw: float
    raw: float

    def value(self, measure: Measure) -> float:
        return getattr(self, measure.value)


@dataclass(frozen=True)
class ImportanceReport:
    t: float
    unreliability: float
    components: tuple[ComponentImportance, ...]
    ranking: tuple[str, ...]
    measure: Measure = Measure.BIRNBAUM
    orientation: Orientation = Orientation.STANDARD

    def __getitem__(self, event_id: str) -> ComponentImportance:
        for c in self.components:
            if c.event == event_id:
                return c
        raise KeyError(event_id)

    def rank_of(self, event_id: str) -> int:
        return self.ranking.index(event_id) + 1


def rank_values(values: Mapping[str, float]) -> list[str]:
    """Descending by value, +inf first, ties by ascending (natural) event id."""
    return sorted(values, key=lambda e: (-values[e], event_sort_key(e)))


def importance_report(
    tree: FaultTree,
    t: float,
    measure: Measure = Measure.BIRNBAUM,
    orientation: Orientation = Orientation.STANDARD,
) -> ImportanceReport:
    probs = event_probabilities(tree, t)
    total = probability(tree, probs)
    if total == 0:
        raise SystemNeverFails(f"system unreliability is 0 at t={t}; ratio measures undefined")
    rows = []
    for e in tree.event_ids:
        failed = probability(force(tree, {e: F}), probs)
        working = probability(force(tree, {e: W}), probs)
        if orientation is Orientation.STANDARD:
            fv_ref, rrw_ref, raw_ref = working, working, failed
        else:
            fv_ref, rrw_ref, raw_ref = failed, failed, working
        rows.append(ComponentImportance(
            event=e,
            birnbaum=failed - working,
            fussell_vesely=(total - fv_ref) / total,
            rrw=total / rrw_ref if rrw_ref else math.inf,
            raw=raw_ref / total,
        ))
    ranking = rank_values({c.event: c.value(measure) for c in rows})
    return ImportanceReport(t, total, tuple(rows), tuple(ranking), measure, orientation)


def rank(
    tree: FaultTree,
    t: float,
    measure: Measure = Measure.BIRNBAUM,
    orientation: Orientation = Orientation.STANDARD,
) -> list[str]:
    if measure is Measure.BIRNBAUM:
        probs = event_probabilities(tree, t)
        return rank_values({e: birnbaum_at(tree, probs, e) for e in tree.event_ids})
    return list(importance_report(tree, t, measure, orientation).ranking)


# -- relative importance ---------------------------------------------------------


@dataclass(frozen=True)
class RelativeComparison:
    i: str
    j: str
    permutation_equivalent: bool
    mixed_partial_sign: MixedSign
    prob_ordering: ProbOrdering
    verdict: Verdict
    values: tuple[float, float]

    @property
    def direct_ordering(self) -> str:
        bi, bj = self.values
        if bi == bj:
            return "equal"
        return "i_le_j" if bi < bj else "j_le_i"


def relative_compare(tree: FaultTree, t: float, i: str, j: str, cap: int | None = None) -> RelativeComparison:
    """Apply the permutation-equivalence ordering theorem to components i and j.

    When i and j are permutation equivalent and the mixed partial is
    nonnegative everywhere, p_i <= p_j implies birnbaum(j) <= birnbaum(i).
    The verdict is checked against the directly computed values, which are
    reported whether or not the preconditions hold.
    """
    _check_pair(tree, i, j)
    probs = event_probabilities(tree, t)
    perm = permutation_equivalent(tree, i, j, cap)
    sign = mixed_partial_sign(tree, i, j, cap)
    pi, pj = probs[i], probs[j]
    ordering = ProbOrdering.EQUAL if pi == pj else (ProbOrdering.I_LE_J if pi < pj else ProbOrdering.J_LE_I)
    bi, bj = birnbaum_at(tree, probs, i), birnbaum_at(tree, probs, j)

    verdict = Verdict.INAPPLICABLE
    if perm and sign is MixedSign.NON_NEGATIVE_EVERYWHERE:
        verdict = Verdict.I_LE_J if ordering is ProbOrdering.J_LE_I else Verdict.J_LE_I
        lo, hi = (bi, bj) if verdict is Verdict.I_LE_J else (bj, bi)
        if lo > hi + VERDICT_TOLERANCE:
            raise TheoremViolation(
                f"verdict {verdict.value} contradicted by birnbaum({i})={bi!r}, birnbaum({j})={bj!r}"
            )
    return RelativeComparison(i, j, perm, sign, ordering, verdict, (bi, bj))
