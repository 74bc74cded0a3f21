"""Hierarchical hash codes: weight-tier grouping and the set distance.

Shows how a topic distribution collapses into three relevance levels
(the largest drops between consecutive weights become the level
boundaries), and how two codes are compared by summing per-level
Jaccard distances.
"""

from synsim import HashCode, build_topic_hash, distance, hash_to_dict
from synsim.hashing import SYNSET_SPACE


def show(theta, **kwargs):
    code = build_topic_hash(theta, **kwargs)
    print(f"  {theta} -> {[sorted(l) for l in code.levels]}")
    return code


def main():
    print("grouping topics by weight tiers:")
    show([0.28, 0.05, 0.44, 0.23])          # three clear tiers
    show([0.25, 0.25, 0.25, 0.25], cap=4)   # no drops: everything is level 0
    show([0.40, 0.40, 0.15, 0.05])          # equal weights stay together

    print("\nserialized canonical form:")
    code = build_topic_hash([0.28, 0.05, 0.44, 0.23])
    print(" ", hash_to_dict(code))

    print("\ndistances between synset-space codes (range 0..3):")
    a = HashCode((frozenset({"power.n.01"}),
                  frozenset({"grid.n.01", "supply.n.02"}),
                  frozenset({"price.n.01"})), SYNSET_SPACE)
    b = HashCode((frozenset({"power.n.01"}),
                  frozenset({"grid.n.01"}),
                  frozenset({"market.n.01"})), SYNSET_SPACE)
    c = HashCode((frozenset({"harvest.n.01"}),
                  frozenset({"grain.n.01"}),
                  frozenset({"soil.n.01"})), SYNSET_SPACE)
    print(f"  d(a, a) = {distance(a, a)}   identical codes")
    print(f"  d(a, b) = {distance(a, b)}   shared level 0, partial level 1")
    print(f"  d(a, c) = {distance(a, c)}   nothing shared at any level")

    empty = HashCode((frozenset(), frozenset(), frozenset()), SYNSET_SPACE)
    print(f"  d(empty, empty) = {distance(empty, empty)}   agreeing on nothing is agreement")
    print(f"  d(a, empty) = {distance(a, empty)}   one-sided emptiness counts per level")


if __name__ == "__main__":
    main()
