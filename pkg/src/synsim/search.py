"""Exact ranked similarity search over synset hash codes.

Documents are stored with per-level inverted posting lists (synset id
to document ids). A query gathers candidates from the posting lists of
its own synsets and scores them with the level-wise Jaccard-sum
distance; documents sharing nothing with the probe have a distance
that depends only on which of their levels are empty, so they are
scored arithmetically without touching their sets. Rankings are
therefore always identical to an exhaustive scan.
"""

import json
from pathlib import Path

from .hashing import (
    SYNSET_SPACE,
    HashCode,
    distance,
    hash_from_dict,
    hash_to_dict,
)

FORMAT = "synsim-index/1"

EMPTY_KEY = "∅"


def cluster_key(code: HashCode) -> str:
    """Canonical cluster identity: the sorted level-0 set.

    Documents with equal keys belong to the same cluster; an empty
    level 0 maps every concept-less document to the same sentinel key.
    """
    if code.space != SYNSET_SPACE:
        raise ValueError("cluster keys are defined on synset-space hashes")
    top = code.levels[0]
    if not top:
        return EMPTY_KEY
    return "|".join(sorted(top))


class SimilarityIndex:
    """In-memory index of synset hash codes supporting exact ranked queries."""

    def __init__(self, num_levels: int = 3):
        if num_levels < 1:
            raise ValueError("num_levels must be >= 1")
        self.num_levels = num_levels
        self.store: dict[str, HashCode] = {}
        self.langs: dict[str, str | None] = {}
        self.postings: list[dict[str, set[str]]] = [{} for _ in range(num_levels)]
        # level-emptiness bitmask per doc, bit l set when level l is empty
        self._empty_mask: dict[str, int] = {}

    def __len__(self) -> int:
        return len(self.store)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.store

    def add(self, doc_id: str, code: HashCode, lang: str | None = None) -> None:
        """Insert a document's synset hash; duplicate ids are rejected."""
        if code.space != SYNSET_SPACE:
            raise ValueError("only synset-space hashes can be indexed")
        if code.num_levels != self.num_levels:
            raise ValueError(
                f"hash has {code.num_levels} levels, index expects {self.num_levels}"
            )
        if doc_id in self.store:
            raise ValueError(f"document {doc_id!r} is already indexed")
        self.store[doc_id] = code
        self.langs[doc_id] = lang
        mask = 0
        for level, posting in zip(code.levels, self.postings):
            for synset in level:
                posting.setdefault(synset, set()).add(doc_id)
        for l, level in enumerate(code.levels):
            if not level:
                mask |= 1 << l
        self._empty_mask[doc_id] = mask

    def _candidates(self, probe: HashCode) -> set[str]:
        found: set[str] = set()
        for level, posting in zip(probe.levels, self.postings):
            for synset in level:
                docs = posting.get(synset)
                if docs:
                    found |= docs
        return found

    def query(self, probe: HashCode, k: int) -> list[tuple[str, float]]:
        """Rank all indexed documents by distance to the probe; return top k.

        Ordering is (distance ascending, document id ascending), identical
        to an exhaustive scan. An empty index yields an empty result.
        """
        if probe.space != SYNSET_SPACE:
            raise ValueError("probes must be synset-space hashes")
        if probe.num_levels != self.num_levels:
            raise ValueError(
                f"probe has {probe.num_levels} levels, index expects {self.num_levels}"
            )
        if k < 1:
            raise ValueError("k must be >= 1")
        if not self.store:
            return []

        candidates = self._candidates(probe)
        scored: list[tuple[float, str]] = []
        for doc_id in candidates:
            scored.append((distance(probe, self.store[doc_id]), doc_id))

        # A document sharing no synset with the probe at any level has an
        # all-empty intersection: each level contributes 1 unless both
        # sides are empty there, which needs only the emptiness bitmasks.
        probe_mask = 0
        for l, level in enumerate(probe.levels):
            if not level:
                probe_mask |= 1 << l
        for doc_id, mask in self._empty_mask.items():
            if doc_id in candidates:
                continue
            both_empty = bin(mask & probe_mask).count("1")
            scored.append((float(self.num_levels - both_empty), doc_id))

        scored.sort(key=lambda item: (item[0], item[1]))
        return [(doc_id, dist) for dist, doc_id in scored[:k]]

    def save(self, path: str | Path) -> None:
        """Persist hashes and posting lists in one versioned JSON file."""
        obj = {
            "format": FORMAT,
            "num_levels": self.num_levels,
            "docs": {
                doc_id: {"lang": self.langs[doc_id], "hash": hash_to_dict(code)}
                for doc_id, code in self.store.items()
            },
            "postings": [
                {synset: sorted(docs) for synset, docs in posting.items()}
                for posting in self.postings
            ],
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, ensure_ascii=False, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path: str | Path) -> "SimilarityIndex":
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
        if obj.get("format") != FORMAT:
            raise ValueError(f"unsupported index format: {obj.get('format')!r}")
        index = cls(int(obj["num_levels"]))
        for doc_id, entry in obj["docs"].items():
            index.add(doc_id, hash_from_dict(entry["hash"]), entry.get("lang"))
        stored = [
            {synset: set(docs) for synset, docs in posting.items()}
            for posting in obj["postings"]
        ]
        if stored != index.postings:
            raise ValueError(f"{path}: posting lists inconsistent with stored hashes")
        return index
