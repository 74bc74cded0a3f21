"""Hierarchical set-valued hash codes over topic distributions.

A document's topic distribution is condensed into an ordered list of L
levels (default 3). Level 0 holds the dominant topics, level 1 the next
tier, and so on: the considered topics are sorted by weight and split
at the L-1 largest drops between consecutive weights. Translating each
topic to its synset annotation turns the code into a language-neutral
description, and two codes are compared by summing the per-level
Jaccard distances.
"""

from dataclasses import dataclass

import numpy as np

TOPIC_SPACE = "topic"
SYNSET_SPACE = "synset"


@dataclass(frozen=True)
class HashCode:
    """Ordered levels of topic ids (ints) or synset ids (strings)."""

    levels: tuple[frozenset, ...]
    space: str

    @property
    def num_levels(self) -> int:
        return len(self.levels)

    def __post_init__(self):
        if self.space not in (TOPIC_SPACE, SYNSET_SPACE):
            raise ValueError(f"unknown hash space {self.space!r}")
        if not self.levels:
            raise ValueError("a hash code needs at least one level")


def build_topic_hash(theta, num_levels: int = 3, cap: int = 12) -> HashCode:
    """Group the strongest topics of a distribution into weight tiers.

    Takes the top min(cap, K) topics by weight (ties broken by lower
    topic id), computes the drops between consecutive weights, and cuts
    at the num_levels-1 largest strictly positive drops (ties resolved
    toward earlier positions). Equal weights never split, so a uniform
    distribution puts every considered topic in level 0 and leaves the
    lower levels empty.
    """
    if num_levels < 1:
        raise ValueError("num_levels must be >= 1")
    if cap < num_levels:
        raise ValueError("cap must be >= num_levels")
    theta = np.asarray(theta, dtype=float)
    order = np.lexsort((np.arange(theta.shape[0]), -theta))
    top = order[: min(cap, theta.shape[0])]
    weights = theta[top]

    gaps = weights[:-1] - weights[1:]
    candidates = [i for i in range(len(gaps)) if gaps[i] > 0.0]
    n_cuts = min(num_levels - 1, len(candidates))
    # Largest drops first; ties prefer the earlier position.
    chosen = sorted(sorted(candidates, key=lambda i: (-gaps[i], i))[:n_cuts])

    levels: list[frozenset] = []
    start = 0
    for cut in chosen:
        levels.append(frozenset(int(t) for t in top[start : cut + 1]))
        start = cut + 1
    levels.append(frozenset(int(t) for t in top[start:]))
    while len(levels) < num_levels:
        levels.append(frozenset())
    return HashCode(tuple(levels), TOPIC_SPACE)


def to_synset_hash(topic_hash: HashCode, annotations) -> HashCode:
    """Replace each level's topics by the union of their synset sets.

    ``annotations`` maps topic id to an object with a ``synsets`` set
    (or directly to a set of synset ids). Every topic in the hash must
    have an entry; an empty set is fine and simply contributes nothing.
    """
    if topic_hash.space != TOPIC_SPACE:
        raise ValueError("expected a topic-space hash")
    levels = []
    for level in topic_hash.levels:
        merged: set[str] = set()
        for topic in level:
            entry = annotations[topic]
            merged |= getattr(entry, "synsets", entry)
        levels.append(frozenset(merged))
    return HashCode(tuple(levels), SYNSET_SPACE)


def jaccard_distance(a: frozenset, b: frozenset) -> float:
    """Jaccard distance with the empty-set conventions used per level.

    Two empty sets agree perfectly (distance 0); an empty set against a
    nonempty one disagrees completely (distance 1).
    """
    if not a and not b:
        return 0.0
    if not a or not b:
        return 1.0
    return 1.0 - len(a & b) / len(a | b)


def distance(a: HashCode, b: HashCode) -> float:
    """Sum of per-level Jaccard distances between two hash codes.

    The result lies in [0, L]; it is 0 iff all corresponding levels are
    equal as sets.
    """
    if a.num_levels != b.num_levels:
        raise ValueError("hash codes have different level counts")
    if a.space != b.space:
        raise ValueError("hash codes live in different spaces")
    return sum(jaccard_distance(x, y) for x, y in zip(a.levels, b.levels))


def _sort_level(level: frozenset) -> list:
    return sorted(level)


def hash_to_dict(code: HashCode) -> dict:
    """Canonical JSON form: each level sorted for byte-stable output."""
    return {"space": code.space, "levels": [_sort_level(lv) for lv in code.levels]}


def hash_from_dict(obj: dict) -> HashCode:
    space = obj["space"]
    levels = tuple(frozenset(lv) for lv in obj["levels"])
    return HashCode(levels, space)
