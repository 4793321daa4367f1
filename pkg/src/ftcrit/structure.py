"""Structure function, state forcing, and the brute-force probability oracle.

``phi`` evaluates a tree on one state vector. ``truth_table`` evaluates it on
every residual state at once with numpy broadcasting: free event ``k`` owns
array axis ``n - 1 - k`` so the flattened table is indexed by the state
integer whose bit ``k`` is the state of event ``k``.

``oracle_probability`` sums state probabilities over that table. It shares no
code with the closed-form and inclusion-exclusion paths in :mod:`ftcrit.prob`
and is the reference they are tested against.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Union

import numpy as np

from .errors import MissingState, ProbabilityOutOfRange, UnknownEvent
from .model import And, Atomic, FaultTree, Gate, Not, Or, State, check_enumerable, iter_gates

ForcedAssignment = Mapping[str, State]


@dataclass(frozen=True)
class ForcedTree:
    """A read-only view of ``tree`` with some events pinned to a fixed state."""

    tree: FaultTree
    forced: Mapping[str, State] = field(default_factory=dict)

    @property
    def top(self) -> Gate:
        return self.tree.top

    @property
    def events(self):
        return self.tree.events

    @property
    def event_ids(self) -> tuple[str, ...]:
        return self.tree.event_ids

    @cached_property
    def free_ids(self) -> tuple[str, ...]:
        return tuple(e for e in self.tree.event_ids if e not in self.forced)

    @cached_property
    def repeated_events(self) -> bool:
        counts = Counter(
            g.event for g in iter_gates(self.top)
            if isinstance(g, Atomic) and g.event not in self.forced
        )
        return any(n >= 2 for n in counts.values())

    @property
    def has_not(self) -> bool:
        return self.tree.has_not


Model = Union[FaultTree, ForcedTree]


def as_view(model: Model) -> ForcedTree:
    return model if isinstance(model, ForcedTree) else ForcedTree(model, {})


def force(model: Model, forced: ForcedAssignment) -> ForcedTree:
    """Pin events to fixed states; later assignments override earlier ones."""
    view = as_view(model)
    merged = dict(view.forced)
    for event_id, state in forced.items():
        if event_id not in view.tree.index:
            raise UnknownEvent(f"unknown event {event_id}")
        merged[event_id] = State(int(state))
    return ForcedTree(view.tree, merged)


def phi(model: Model, state: Mapping[str, State]) -> int:
    """1 iff the top event occurs in ``state``.

    Forced events take their forced value and need not appear in ``state``.
    """
    view = as_view(model)
    forced = view.forced
    for event_id in view.free_ids:
        if event_id not in state:
            raise MissingState(f"state vector has no entry for {event_id}")

    def value(event_id: str) -> bool:
        if event_id in forced:
            return bool(forced[event_id])
        return bool(state[event_id])

    def ev(gate: Gate) -> bool:
        if isinstance(gate, Atomic):
            return value(gate.event)
        if isinstance(gate, And):
            return all(ev(c) for c in gate.children)
        if isinstance(gate, Or):
            return any(ev(c) for c in gate.children)
        return not ev(gate.child)

    return int(ev(view.top))


def evaluate_vectorized(top: Gate, leaf: Callable[[str], "np.ndarray | bool"]):
    """Evaluate ``top`` with numpy logical ops over whatever ``leaf`` returns.

    Leaves may be scalars or arrays of broadcast-compatible shapes; the
    result has the broadcast shape of the leaves actually reached.
    """
    if isinstance(top, Atomic):
        return leaf(top.event)
    if isinstance(top, Not):
        return np.logical_not(evaluate_vectorized(top.child, leaf))
    if isinstance(top, And):
        acc = np.bool_(True)
        for child in top.children:
            acc = np.logical_and(acc, evaluate_vectorized(child, leaf))
        return acc
    acc = np.bool_(False)
    for child in top.children:
        acc = np.logical_or(acc, evaluate_vectorized(child, leaf))
    return acc


def _axis_array(k: int, n: int, values) -> np.ndarray:
    shape = [1] * n
    shape[n - 1 - k] = 2
    return np.asarray(values).reshape(shape)


def truth_table(model: Model, cap: int | None = None) -> np.ndarray:
    """phi over all residual states as a flat bool array of length 2**n_free."""
    view = as_view(model)
    free = view.free_ids
    n = len(free)
    check_enumerable(n, cap)
    axis_of = {e: k for k, e in enumerate(free)}
    bits = np.array([False, True])

    def leaf(event_id: str):
        if event_id in view.forced:
            return np.bool_(view.forced[event_id] == State.FAILED)
        return _axis_array(axis_of[event_id], n, bits)

    table = evaluate_vectorized(view.top, leaf)
    return np.ascontiguousarray(np.broadcast_to(table, (2,) * n)).reshape(-1)


def state_from_index(ids, s: int) -> dict[str, State]:
    return {e: State((s >> k) & 1) for k, e in enumerate(ids)}


def check_probabilities(probs: Mapping[str, float], ids) -> None:
    for e in ids:
        if e not in probs:
            raise MissingState(f"no probability given for event {e}")
        p = probs[e]
        if not (0.0 <= p <= 1.0):
            raise ProbabilityOutOfRange(f"probability of {e} is {p!r}, outside [0, 1]")


def state_weights(probs: Mapping[str, float], free, n: int) -> np.ndarray:
    """Probability of each residual state under independence, flat, same indexing."""
    weights = np.float64(1.0)
    for k, e in enumerate(free):
        p = float(probs[e])
        weights = weights * _axis_array(k, n, [1.0 - p, p])
    return np.ascontiguousarray(np.broadcast_to(weights, (2,) * n)).reshape(-1)


def oracle_probability(
    model: Model,
    probs: Mapping[str, float],
    forced: ForcedAssignment | None = None,
    cap: int | None = None,
) -> float:
    """Exact top-event probability by enumerating every residual state.

    Events with probability exactly 0 or 1 are treated as forced, so forcing
    and the matching degenerate probability give bit-identical results.
    """
    view = force(model, forced) if forced else as_view(model)
    check_probabilities(probs, view.free_ids)
    certain = {e: State(int(probs[e])) for e in view.free_ids if probs[e] in (0.0, 1.0)}
    if certain:
        view = force(view, certain)
    free = view.free_ids
    check_enumerable(len(free), cap)
    table = truth_table(view, cap)
    weights = state_weights(probs, free, len(free))
    # np.sum is pairwise over a contiguous array: fixed order, reproducible
    return float(np.sum(np.where(table, weights, 0.0)))
