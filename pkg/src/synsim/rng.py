"""Deterministic random-stream derivation.

Every random choice in a run (sampler initialization, Gibbs draws,
evaluation subsampling) is drawn from a named substream of one master
seed, so results are reproducible and independent of execution order.
"""

import hashlib

import numpy as np


def derive_seed(seed: int, name: str) -> int:
    """Derive a child seed from a master seed and a stream name.

    Stable across processes and platforms: the name is folded in via
    SHA-256, not Python's salted hash().
    """
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    tag = int.from_bytes(digest[:8], "big")
    return int(np.random.SeedSequence([int(seed), tag]).generate_state(1)[0])


def substream(seed: int, name: str) -> np.random.Generator:
    """Return a Generator for the named substream of `seed`."""
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    tag = int.from_bytes(digest[:8], "big")
    return np.random.default_rng(np.random.SeedSequence([int(seed), tag]))
