"""Deterministic random-stream derivation.

Every stochastic operation takes one user-facing seed; internal parallelism
(multiple chains, matrix cells, per-weld draws, per-state simulations) uses
substreams derived from (seed, index path) so results are reproducible and
independent of evaluation order.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError


def check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise ConfigError(f"seed must be an integer, got {seed!r}")
    if seed < 0:
        raise ConfigError(f"seed must be non-negative, got {seed}")
    return int(seed)


def substream(seed: int, *path: int) -> np.random.Generator:
    """A generator for the substream identified by (seed, *path)."""
    entropy = [check_seed(seed)] + [int(p) for p in path]
    return np.random.default_rng(np.random.SeedSequence(entropy))
