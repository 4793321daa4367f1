"""Random fault-tree generator for property tests."""

from __future__ import annotations

import math
import random

from ftcrit.model import And, BasicEvent, Not, Or, build_tree


def random_tree(
    rng: random.Random,
    max_events: int = 12,
    min_events: int = 1,
    repeat_prob: float = 0.4,
    not_prob: float = 0.0,
    rate_range: tuple[float, float] = (1e-6, 1e-1),
):
    """Every event is used at least once; a few may be repeated.

    Rates are log-uniform over ``rate_range``. Gates take 2-4 inputs.
    """
    n = rng.randint(min_events, max_events)
    lo, hi = math.log10(rate_range[0]), math.log10(rate_range[1])
    events = [BasicEvent(f"e{k}", f"event {k}", 10 ** rng.uniform(lo, hi)) for k in range(1, n + 1)]
    nodes = [e.id for e in events]
    if n >= 2 and rng.random() < repeat_prob:
        nodes += rng.sample(nodes, rng.randint(1, min(3, n)))
    nodes = [_maybe_not(rng, x, not_prob) for x in nodes]
    rng.shuffle(nodes)
    while len(nodes) > 1:
        k = rng.randint(2, min(4, len(nodes)))
        picked = [nodes.pop(rng.randrange(len(nodes))) for _ in range(k)]
        gate = (And if rng.random() < 0.5 else Or)(picked)
        nodes.append(_maybe_not(rng, gate, not_prob))
    top = nodes[0]
    if isinstance(top, str):
        top = Or([top])
    return build_tree(events, top)


def random_and_tree(rng: random.Random, n_min: int = 3, n_max: int = 6):
    n = rng.randint(n_min, n_max)
    events = [BasicEvent(f"x{k}", "", 10 ** rng.uniform(-5, -1)) for k in range(1, n + 1)]
    return build_tree(events, And([e.id for e in events]))


def _maybe_not(rng, node, p):
    return Not(node) if p and rng.random() < p else node
