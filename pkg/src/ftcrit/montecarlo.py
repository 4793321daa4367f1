"""Monte Carlo estimates of unreliability and component criticality.

Samples are drawn in fixed-size batches. Batch ``b`` uses a Philox stream
keyed on ``(seed, b)``, so the uniform used for (sample, event) depends only
on the seed, the sample index and the event index. Batches can be computed
in any order, or in parallel, and reduce to the same counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoFailureSamples, UnknownEvent
from .model import FaultTree
from .prob import event_probabilities
from .structure import evaluate_vectorized

BATCH_SIZE = 1 << 16


@dataclass(frozen=True)
class McConfig:
    samples: int
    seed: int
    t: float

    def __post_init__(self):
        if int(self.samples) < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.t < 0:
            raise ValueError(f"t must be >= 0, got {self.t}")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int


def _batch_states(tree: FaultTree, probs: dict, seed: int, batch: int, size: int) -> np.ndarray:
    """Failed-indicator matrix of shape (size, n_events) for one batch."""
    gen = np.random.Generator(np.random.Philox(key=seed | (batch << 64)))
    uniforms = gen.random((size, len(tree.events)))
    thresholds = np.array([probs[e] for e in tree.event_ids])
    return uniforms < thresholds


def _phi_columns(tree: FaultTree, states: np.ndarray, override: dict[str, bool] | None = None) -> np.ndarray:
    index = tree.index
    override = override or {}

    def leaf(event_id: str):
        if event_id in override:
            return np.bool_(override[event_id])
        return states[:, index[event_id]]

    return np.broadcast_to(evaluate_vectorized(tree.top, leaf), (states.shape[0],))


def _batches(cfg: McConfig):
    done, batch = 0, 0
    while done < cfg.samples:
        size = min(BATCH_SIZE, cfg.samples - done)
        yield batch, size
        done += size
        batch += 1


def _estimate(hits: int, n: int) -> McEstimate:
    p = hits / n
    return McEstimate(p, math.sqrt(p * (1.0 - p) / n), n)


def estimate_unreliability(tree: FaultTree, cfg: McConfig) -> McEstimate:
    """Fraction of sampled states in which the top event occurs."""
    probs = event_probabilities(tree, cfg.t)
    hits = 0
    for batch, size in _batches(cfg):
        states = _batch_states(tree, probs, cfg.seed, batch, size)
        hits += int(np.count_nonzero(_phi_columns(tree, states)))
    return _estimate(hits, cfg.samples)


def estimate_criticality(tree: FaultTree, cfg: McConfig, i: str) -> McEstimate:
    """Share of system failures in which component ``i`` is failed and critical.

    ``i`` is critical in a sample when repairing it alone would bring the
    system back up. ``samples`` in the result counts system-failure samples.
    """
    if i not in tree.index:
        raise UnknownEvent(f"unknown event {i}")
    probs = event_probabilities(tree, cfg.t)
    k = tree.index[i]
    failures = critical = 0
    for batch, size in _batches(cfg):
        states = _batch_states(tree, probs, cfg.seed, batch, size)
        down = _phi_columns(tree, states)
        repaired = _phi_columns(tree, states, {i: False})
        failures += int(np.count_nonzero(down))
        critical += int(np.count_nonzero(down & states[:, k] & ~repaired))
    if failures == 0:
        raise NoFailureSamples(f"no system failure in {cfg.samples} samples at t={cfg.t}")
    return _estimate(critical, failures)
