"""Configurable size caps for the exponential algorithms."""

from __future__ import annotations

import os

DEFAULT_MAX_EVENTS = 24
DEFAULT_MAX_PIE_CUTS = 25
DEFAULT_MAX_EXPANSION = 1_000_000

MAX_EVENTS_ENV = "FTCRIT_MAX_EVENTS"


def max_events() -> int:
    """Enumeration cap; ``FTCRIT_MAX_EVENTS`` overrides the default of 24."""
    raw = os.environ.get(MAX_EVENTS_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_MAX_EVENTS
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_EVENTS_ENV} must be an integer, got {raw!r}") from None
    if cap < 0:
        raise ValueError(f"{MAX_EVENTS_ENV} must be nonnegative, got {cap}")
    return cap
