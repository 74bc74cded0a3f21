"""Document-frequency filtered vocabulary and bag-of-words conversion."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

FORMAT = "synsim-vocabulary/1"


@dataclass
class Vocabulary:
    """Immutable term space shared by a corpus and its topic model.

    ``terms`` fixes the term-id order (descending document frequency,
    ties lexicographic) so serialized models are byte-reproducible.
    """

    terms: list[str]
    doc_freq: list[float]
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {t: i for i, t in enumerate(self.terms)}
        if len(self.index) != len(self.terms):
            raise ValueError("vocabulary terms must be unique")

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index


def build_vocabulary(
    tokenized: Sequence[Iterable[str]],
    max_df: float = 0.90,
    min_df: float = 0.005,
) -> Vocabulary:
    """Build the vocabulary of a tokenized corpus.

    A term is retained iff its document frequency df (fraction of
    documents containing it) satisfies min_df <= df <= max_df; only
    strictly more frequent / strictly rarer terms are dropped, so a
    term sitting exactly on a threshold survives.
    """
    if not 0 <= min_df <= max_df <= 1:
        raise ValueError("need 0 <= min_df <= max_df <= 1")
    if len(tokenized) == 0:
        raise ValueError("cannot build a vocabulary from an empty corpus")
    n_docs = len(tokenized)
    counts: dict[str, int] = {}
    for tokens in tokenized:
        for term in set(tokens):
            counts[term] = counts.get(term, 0) + 1
    kept = []
    for term, count in counts.items():
        df = count / n_docs
        if min_df <= df <= max_df:
            kept.append((term, df))
    kept.sort(key=lambda item: (-item[1], item[0]))
    return Vocabulary([t for t, _ in kept], [df for _, df in kept])


def to_bow(tokens: Iterable[str], vocab: Vocabulary) -> dict[int, int]:
    """Count in-vocabulary tokens; out-of-vocabulary tokens are dropped."""
    bow: dict[int, int] = {}
    index = vocab.index
    for token in tokens:
        tid = index.get(token)
        if tid is not None:
            bow[tid] = bow.get(tid, 0) + 1
    return bow


def vocabulary_to_dict(vocab: Vocabulary) -> dict:
    return {"format": FORMAT, "terms": vocab.terms, "doc_freq": vocab.doc_freq}


def vocabulary_from_dict(obj: dict) -> Vocabulary:
    if obj.get("format") != FORMAT:
        raise ValueError(f"unsupported vocabulary format: {obj.get('format')!r}")
    return Vocabulary(list(obj["terms"]), [float(x) for x in obj["doc_freq"]])


def save_vocabulary(vocab: Vocabulary, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(vocabulary_to_dict(vocab), fh, ensure_ascii=False, sort_keys=True)
        fh.write("\n")


def load_vocabulary(path: str | Path) -> Vocabulary:
    with open(path, encoding="utf-8") as fh:
        return vocabulary_from_dict(json.load(fh))
