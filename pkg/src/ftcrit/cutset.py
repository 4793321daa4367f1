"""Cut-set normal form and minimal cut sets.

A cut is a bit mask over a fixed event order (bit ``k`` is ``order[k]``).
``to_cutsets`` runs a top-down MOCUS expansion: each row of the working table
is a partial cut plus the gates still to be expanded; an AND gate puts its
children into the same row, an OR gate splits the row, one per child.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ExpansionTooLarge, NotFreeViolation
from .limits import DEFAULT_MAX_EXPANSION
from .model import And, Atomic, Or, State, event_sort_key
from .structure import Model, as_view


@dataclass(frozen=True)
class CutSetForm:
    """OR of ANDs: the top event occurs iff every member of some cut fails.

    No cuts is the impossible event; a single empty cut is the certain event.
    """

    order: tuple[str, ...]
    masks: tuple[int, ...]

    @property
    def cuts(self) -> list[frozenset[str]]:
        return [frozenset(self.members(m)) for m in self.masks]

    def members(self, mask: int) -> list[str]:
        ids = [e for k, e in enumerate(self.order) if mask >> k & 1]
        return sorted(ids, key=event_sort_key)

    def __len__(self) -> int:
        return len(self.masks)

    def as_lists(self) -> list[list[str]]:
        return [self.members(m) for m in self.masks]


def _canonical_key(form_order, mask):
    ids = sorted((e for k, e in enumerate(form_order) if mask >> k & 1), key=event_sort_key)
    return (len(ids), [event_sort_key(e) for e in ids])


def make_form(order: Sequence[str], masks: Iterable[int]) -> CutSetForm:
    """Deduplicate and sort masks into canonical order (size, then ids)."""
    order = tuple(order)
    unique = set(masks)
    return CutSetForm(order, tuple(sorted(unique, key=lambda m: _canonical_key(order, m))))


def form_from_sets(cuts: Iterable[Iterable[str]], order: Sequence[str] | None = None) -> CutSetForm:
    cuts = [frozenset(c) for c in cuts]
    if order is None:
        order = sorted(set().union(*cuts), key=event_sort_key)
    index = {e: k for k, e in enumerate(order)}
    masks = []
    for cut in cuts:
        m = 0
        for e in cut:
            m |= 1 << index[e]
        masks.append(m)
    return make_form(order, masks)


def to_cutsets(model: Model, max_rows: int = DEFAULT_MAX_EXPANSION) -> CutSetForm:
    """Expand a NOT-free tree (or forced view) into an equivalent cut-set form.

    Forced-failed events drop out of every cut; a forced-working event kills
    any row that needs it. The result is deduplicated but not absorbed; see
    :func:`minimize`.
    """
    view = as_view(model)
    if view.has_not:
        raise NotFreeViolation("cut-set expansion needs a NOT-free tree")
    order = view.event_ids
    bit = {e: 1 << k for k, e in enumerate(order)}
    forced = view.forced

    rows = [(0, (view.top,))]
    created = 1
    done: set[int] = set()
    while rows:
        mask, pending = rows.pop()
        while pending:
            gate, rest = pending[0], pending[1:]
            if isinstance(gate, Atomic):
                state = forced.get(gate.event)
                if state is State.WORKING:
                    break
                if state is None:
                    mask |= bit[gate.event]
                pending = rest
            elif isinstance(gate, And):
                pending = gate.children + rest
            elif isinstance(gate, Or):
                if not gate.children:
                    break
                for child in gate.children[1:]:
                    rows.append((mask, (child,) + rest))
                created += len(gate.children) - 1
                if created > max_rows:
                    raise ExpansionTooLarge(
                        f"cut-set expansion exceeded {max_rows} intermediate cuts"
                    )
                pending = (gate.children[0],) + rest
            else:  # pragma: no cover - has_not checked above
                raise NotFreeViolation("NOT gate in cut-set expansion")
        else:
            done.add(mask)
    return make_form(order, done)


def minimize(form: CutSetForm) -> CutSetForm:
    """Absorption: drop every cut that is a superset of another."""
    kept: list[int] = []
    for m in sorted(set(form.masks), key=lambda m: (bin(m).count("1"), m)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return make_form(form.order, kept)


def minimal_cut_sets(model: Model, max_rows: int = DEFAULT_MAX_EXPANSION) -> CutSetForm:
    return minimize(to_cutsets(model, max_rows))


def evaluate_cutsets(form: CutSetForm, state: Mapping[str, State]) -> int:
    failed = 0
    for k, e in enumerate(form.order):
        if e in state and state[e]:
            failed |= 1 << k
    return int(any(m & failed == m for m in form.masks))
