"""Basic events, gates, fault trees and state vectors.

Gates form an immutable AST over four primitive node types:

* ``And(children)``: fails iff every child fails (empty AND is the certain event)
* ``Or(children)``: fails iff some child fails (empty OR is the impossible event)
* ``Not(child)``
* ``Atomic(event)``: a reference to a declared basic event

NAND, NOR and XOR have no node type of their own. ``nand``, ``nor`` and
``xor`` build the equivalent AND/OR/NOT structure and tag the resulting node
with the sugar it came from so that serializers can note it.
"""

from __future__ import annotations

import enum
import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Sequence, Union

from .errors import (
    DanglingReference,
    DuplicateEventId,
    EmptyTree,
    InvalidEvent,
    TooManyEvents,
    UnusedEvent,
)
from .limits import max_events

ID_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class State(enum.IntEnum):
    WORKING = 0
    FAILED = 1


StateVector = Mapping[str, State]


def event_sort_key(event_id: str) -> tuple:
    """Natural ordering for ids, so that x2 sorts before x10."""
    parts = re.split(r"(\d+)", event_id)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


@dataclass(frozen=True)
class BasicEvent:
    id: str
    label: str = ""
    rate: float = 0.0

    def __post_init__(self):
        if not isinstance(self.id, str) or not ID_PATTERN.match(self.id):
            raise InvalidEvent(f"invalid event id {self.id!r}", self.id)
        rate = float(self.rate)
        if not math.isfinite(rate) or rate < 0:
            raise InvalidEvent(
                f"event {self.id}: rate must be finite and >= 0, got {self.rate!r}", self.id
            )
        object.__setattr__(self, "rate", rate)


# -- gates -------------------------------------------------------------------


def _coerce(node) -> "Gate":
    if isinstance(node, str):
        return Atomic(node)
    if isinstance(node, (And, Or, Not, Atomic)):
        return node
    raise TypeError(f"not a gate: {node!r}")


@dataclass(frozen=True)
class Atomic:
    event: str


@dataclass(frozen=True)
class And:
    children: tuple = ()
    sugar: str | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(_coerce(c) for c in self.children))


@dataclass(frozen=True)
class Or:
    children: tuple = ()
    sugar: str | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(_coerce(c) for c in self.children))


@dataclass(frozen=True)
class Not:
    child: "Gate"
    sugar: str | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "child", _coerce(self.child))


Gate = Union[And, Or, Not, Atomic]


def nand(negated: Sequence, plain: Sequence = ()) -> And:
    """AND of the complemented ``negated`` gates and the ``plain`` gates."""
    negated = [_coerce(g) for g in negated]
    plain = [_coerce(g) for g in plain]
    note = f"NAND({', '.join(map(gate_text, negated + plain))}) with {len(negated)} negated"
    return And([Not(g) for g in negated] + plain, sugar=note)


def nor(children: Sequence) -> Not:
    children = [_coerce(g) for g in children]
    note = f"NOR({', '.join(map(gate_text, children))})"
    return Not(Or(children), sugar=note)


def xor(a, b) -> Or:
    a, b = _coerce(a), _coerce(b)
    note = f"XOR({gate_text(a)}, {gate_text(b)})"
    return Or([And([Not(a), b]), And([a, Not(b)])], sugar=note)


def gate_text(gate: Gate) -> str:
    """Render a gate in the one-line concrete syntax."""
    if isinstance(gate, Atomic):
        return gate.event
    if isinstance(gate, Not):
        return f"NOT({gate_text(gate.child)})"
    name = "AND" if isinstance(gate, And) else "OR"
    return f"{name}({', '.join(gate_text(c) for c in gate.children)})"


def iter_gates(gate: Gate) -> Iterator[Gate]:
    """Pre-order traversal, iterative so deep trees do not hit the recursion limit."""
    stack = [gate]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (And, Or)):
            stack.extend(reversed(node.children))
        elif isinstance(node, Not):
            stack.append(node.child)


def leaf_counts(gate: Gate) -> Counter:
    return Counter(g.event for g in iter_gates(gate) if isinstance(g, Atomic))


def contains_not(gate: Gate) -> bool:
    return any(isinstance(g, Not) for g in iter_gates(gate))


# -- trees -------------------------------------------------------------------


@dataclass(frozen=True)
class FaultTree:
    """A validated fault tree. Construct through :func:`build_tree`."""

    events: tuple[BasicEvent, ...]
    top: Gate

    @cached_property
    def event_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.events)

    @cached_property
    def index(self) -> dict[str, int]:
        return {e.id: k for k, e in enumerate(self.events)}

    @cached_property
    def rates(self) -> dict[str, float]:
        return {e.id: e.rate for e in self.events}

    @cached_property
    def repeated_events(self) -> bool:
        return any(n >= 2 for n in leaf_counts(self.top).values())

    @cached_property
    def has_not(self) -> bool:
        return contains_not(self.top)

    def event(self, event_id: str) -> BasicEvent:
        return self.events[self.index[event_id]]


def repeated_events(tree: FaultTree) -> bool:
    return tree.repeated_events


def build_tree(events: Sequence[BasicEvent], top) -> FaultTree:
    """Validate and assemble a tree.

    The declared events must be exactly the events the top gate references.
    A tree over zero events is allowed (constant top); declaring events that
    the top never mentions is not.
    """
    top = _coerce(top)
    events = tuple(events)
    seen: set[str] = set()
    for ev in events:
        if ev.id in seen:
            raise DuplicateEventId(f"event {ev.id} declared more than once", ev.id)
        seen.add(ev.id)
    referenced = leaf_counts(top)
    for event_id in referenced:
        if event_id not in seen:
            raise DanglingReference(f"top references undeclared event {event_id}", event_id)
    if events and not referenced:
        raise EmptyTree(
            f"top references none of the {len(events)} declared events", events[0].id
        )
    for ev in events:
        if ev.id not in referenced:
            raise UnusedEvent(f"event {ev.id} is declared but never referenced", ev.id)
    return FaultTree(events, top)


def check_enumerable(n: int, cap: int | None = None) -> None:
    cap = max_events() if cap is None else cap
    if n > cap:
        raise TooManyEvents(n, cap)


def all_states(tree: FaultTree, cap: int | None = None) -> Iterator[dict[str, State]]:
    """Yield all 2**n state vectors; bit k of the index is the state of event k."""
    ids = tree.event_ids
    check_enumerable(len(ids), cap)
    for bits in itertools.product((State.WORKING, State.FAILED), repeat=len(ids)):
        yield dict(zip(ids, reversed(bits)))
