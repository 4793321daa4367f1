"""Exact failure probabilities.

Two evaluation paths, chosen by :func:`probability`:

* no event appears twice: a bottom-up pass with the per-gate closed forms,
  exact under independence because sibling subtrees share no events;
* otherwise: minimal cut sets, then inclusion-exclusion over the cuts.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

import numpy as np

from .cutset import CutSetForm, minimal_cut_sets
from .errors import (
    MissingState,
    NegativeRate,
    NegativeTime,
    NotFreeViolation,
    NumericalInstability,
    ProbabilityOutOfRange,
    TooManyCuts,
)
from .limits import DEFAULT_MAX_PIE_CUTS, max_events
from .model import And, Atomic, FaultTree, Gate, Not, State
from .structure import Model, as_view, oracle_probability

CLAMP_TOLERANCE = 1e-9
_LOW_BITS = 16  # subsets of the last 16 cuts are enumerated as one numpy block


def _check(p: float, what: str = "probability") -> float:
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise ProbabilityOutOfRange(f"{what} {p!r} outside [0, 1]")
    return p


def exp_cdf(rate: float, t: float) -> float:
    """P(failure by time t) for an exponential lifetime: 1 - exp(-rate * t)."""
    if rate < 0:
        raise NegativeRate(f"rate must be >= 0, got {rate!r}")
    if t < 0:
        raise NegativeTime(f"time must be >= 0, got {t!r}")
    return min(1.0, max(0.0, -math.expm1(-rate * t)))


# -- gate closed forms -------------------------------------------------------


def and_prob(probs: Sequence[float]) -> float:
    return math.prod(_check(p) for p in probs)


def or_prob(probs: Sequence[float]) -> float:
    return 1.0 - math.prod(1.0 - _check(p) for p in probs)


def nand_prob(neg: Sequence[float], pos: Sequence[float]) -> float:
    return math.prod(1.0 - _check(p) for p in neg) * math.prod(_check(p) for p in pos)


def nor_prob(probs: Sequence[float]) -> float:
    return 1.0 - or_prob(probs)


def xor_prob(pa: float, pb: float) -> float:
    pa, pb = _check(pa), _check(pb)
    return (1.0 - pa) * pb + pa * (1.0 - pb)


# -- inclusion-exclusion -----------------------------------------------------


def _finish(total: float) -> float:
    if total < -CLAMP_TOLERANCE or total > 1.0 + CLAMP_TOLERANCE:
        raise NumericalInstability(f"inclusion-exclusion result {total!r} outside [0, 1]")
    return min(1.0, max(0.0, total))


def _byte_tables(order, probs, n_words):
    """Per byte of the union mask, the product of member probabilities."""
    tables = []
    for w in range(n_words):
        for b in range(8):
            base = w * 64 + b * 8
            if base >= len(order):
                tables.append(None)
                continue
            ps = [float(probs.get(order[base + i], 1.0)) if base + i < len(order) else 1.0 for i in range(8)]
            table = np.ones(256)
            for v in range(1, 256):
                low = v & -v
                table[v] = table[v ^ low] * ps[low.bit_length() - 1]
            tables.append(table)
    return tables


def _union_array(masks: Sequence[int], n_words: int) -> np.ndarray:
    """Union masks of all subsets of ``masks``; row s is the union for subset s."""
    out = np.zeros((1, n_words), dtype=np.uint64)
    for m in masks:
        words = np.array([(m >> (64 * w)) & (2**64 - 1) for w in range(n_words)], dtype=np.uint64)
        out = np.concatenate([out, out | words])
    return out


def _products(unions: np.ndarray, tables) -> np.ndarray:
    result = np.ones(unions.shape[0])
    for w in range(unions.shape[1]):
        col = unions[:, w]
        for b in range(8):
            if tables[w * 8 + b] is None:
                continue
            idx = ((col >> np.uint64(8 * b)) & np.uint64(255)).astype(np.intp)
            result *= tables[w * 8 + b][idx]
    return result


def _popcount(n_bits: int) -> np.ndarray:
    counts = np.zeros(1, dtype=np.int64)
    for _ in range(n_bits):
        counts = np.concatenate([counts, counts + 1])
    return counts


def pie_probability(
    form: CutSetForm, probs: Mapping[str, float], cap: int = DEFAULT_MAX_PIE_CUTS
) -> float:
    """P(some cut fully fails) by inclusion-exclusion over the cuts.

    The intersection of a subset of cut events has probability equal to the
    product over the union of their members. Terms are summed exactly with
    ``math.fsum`` within each subset size, then the size totals are combined
    in ascending size order.
    """
    masks = list(form.masks)
    m = len(masks)
    if m > cap:
        raise TooManyCuts(m, cap)
    if m == 0:
        return 0.0
    used = 0
    for mask in masks:
        used |= mask
    for k, e in enumerate(form.order):
        if used >> k & 1:
            if e not in probs:
                raise MissingState(f"no probability given for event {e}")
            _check(probs[e], f"probability of {e}")
    n_words = max(1, (len(form.order) + 63) // 64)
    tables = _byte_tables(form.order, probs, n_words)

    n_low = min(m, _LOW_BITS)
    low_masks, high_masks = masks[:n_low], masks[n_low:]
    low_size = _popcount(n_low)
    by_size = np.argsort(low_size, kind="stable")
    low_union = _union_array(low_masks, n_words)[by_size]
    low_size = low_size[by_size]
    # slice bounds of each subset size within the reordered low block
    bounds = np.searchsorted(low_size, np.arange(n_low + 2))
    high_union = _union_array(high_masks, n_words)
    high_size = _popcount(len(high_masks))

    groups: list[list[float]] = [[] for _ in range(m + 1)]
    for h in range(high_union.shape[0]):
        terms = _products(low_union | high_union[h], tables)
        for c in range(n_low + 1):
            size = c + int(high_size[h])
            if size == 0:
                continue
            chunk = terms[bounds[c]:bounds[c + 1]]
            total = math.fsum(chunk.tolist())
            groups[size].append(total if size % 2 else -total)
    return _finish(math.fsum(math.fsum(g) for g in groups[1:]))


# -- whole-tree evaluation ---------------------------------------------------


def _bottom_up(gate: Gate, probs: Mapping[str, float], forced) -> float:
    if isinstance(gate, Atomic):
        if gate.event in forced:
            return 1.0 if forced[gate.event] == State.FAILED else 0.0
        return probs[gate.event]
    if isinstance(gate, Not):
        return 1.0 - _bottom_up(gate.child, probs, forced)
    values = [_bottom_up(c, probs, forced) for c in gate.children]
    return and_prob(values) if isinstance(gate, And) else or_prob(values)


def probability(
    model: Model,
    probs: Mapping[str, float],
    method: str = "auto",
    pie_cap: int = DEFAULT_MAX_PIE_CUTS,
) -> float:
    """Exact top-event probability of a tree or forced view.

    ``probs`` must cover every unforced event. ``method`` is ``"auto"``,
    ``"bottom_up"`` (only valid without repeated events) or ``"pie"``.

    Auto mode enumerates states when no cut-set route applies: the tree has
    both NOT gates and repeated events, or more minimal cuts than
    ``pie_cap``. Enumeration is exact but limited by the event cap.
    """
    view = as_view(model)
    for e in view.free_ids:
        if e not in probs:
            raise MissingState(f"no probability given for event {e}")
        _check(probs[e], f"probability of {e}")
    if method not in ("auto", "bottom_up", "pie"):
        raise ValueError(f"unknown method {method!r}")
    if method == "bottom_up" and view.repeated_events:
        raise ValueError("bottom-up evaluation is inexact when events repeat")
    if method == "bottom_up" or (method == "auto" and not view.repeated_events):
        return _bottom_up(view.top, probs, view.forced)
    if view.has_not:
        if method == "pie":
            raise NotFreeViolation("cut sets need a NOT-free tree")
        # no cut-set form exists; enumeration is still exact within the event cap
        return oracle_probability(view, probs)
    form = minimal_cut_sets(view)
    if method == "auto" and len(form) > pie_cap and len(view.free_ids) <= max_events():
        return oracle_probability(view, probs)
    return pie_probability(form, probs, pie_cap)


def event_probabilities(tree: FaultTree, t: float) -> dict[str, float]:
    return {e.id: exp_cdf(e.rate, t) for e in tree.events}


def system_unreliability(model: Model, t: float) -> float:
    """P(top event by time t) with exponential basic events."""
    view = as_view(model)
    return probability(view, event_probabilities(view.tree, t))
