"""Multilingual synset lexicons and topic annotation.

A lexicon maps lemmas of one language to synset identifiers drawn from
a shared multilingual scheme (WordNet-style). Annotating a topic means
looking up each of its top words and taking the union of all senses
found: no disambiguation, every sense of a top word counts. Topics in
different languages that describe the same concept then overlap in
synset space even though their word distributions never met.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .topics import TopicModel, top_words

log = logging.getLogger(__name__)

ANNOTATIONS_FORMAT = "synsim-annotations/1"


@dataclass
class SynsetLexicon:
    """Case-insensitive lemma -> synset-id-set mapping for one language."""

    lang: str
    entries: dict[str, frozenset[str]] = field(default_factory=dict)

    def synsets_of(self, lemma: str) -> frozenset[str]:
        return self.entries.get(_normalize(lemma), frozenset())

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class TopicAnnotation:
    """The synsets describing one topic: union over its top words' senses."""

    topic: int
    synsets: frozenset[str]


def _normalize(lemma: str) -> str:
    return "_".join(lemma.lower().split())


def load_lexicon(path: str | Path, lang: str) -> SynsetLexicon:
    """Load a two-column ``synset_id<TAB>lemma`` TSV lexicon.

    Lemmas are lowercased and internal spaces collapse to a single '_'
    so multi-word entries match tokenized text. Repeated lemmas union
    their synsets; '#' lines are comments. An empty file yields an
    empty lexicon with a warning.
    """
    entries: dict[str, set[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.rstrip("\n")
            if not stripped.strip() or stripped.lstrip().startswith("#"):
                continue
            parts = stripped.split("\t")
            if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
                raise ValueError(f"{path}:{lineno}: expected 'synset_id<TAB>lemma'")
            synset_id = parts[0].strip()
            lemma = _normalize(parts[1])
            entries.setdefault(lemma, set()).add(synset_id)
    if not entries:
        log.warning("lexicon %s for %r is empty", path, lang)
    return SynsetLexicon(lang, {k: frozenset(v) for k, v in entries.items()})


def synsets_of(lexicon: SynsetLexicon, lemma: str) -> frozenset[str]:
    """All synsets of a lemma; the empty set when it is unknown."""
    return lexicon.synsets_of(lemma)


def annotate_topic(
    model: TopicModel, topic: int, lexicon: SynsetLexicon, n: int = 5
) -> TopicAnnotation:
    """Annotate a topic with the union of its top-n words' synsets.

    Distinct topics may well share synsets; topics whose top words are
    all out-of-lexicon get an empty annotation.
    """
    if lexicon.lang != model.lang:
        raise ValueError(
            f"lexicon language {lexicon.lang!r} does not match model {model.lang!r}"
        )
    merged: set[str] = set()
    for lemma, _ in top_words(model, topic, n):
        merged |= lexicon.synsets_of(lemma)
    return TopicAnnotation(topic, frozenset(merged))


def annotate_all(
    model: TopicModel, lexicon: SynsetLexicon, n: int = 5
) -> dict[int, TopicAnnotation]:
    """Annotations of every topic; reports how many came out empty."""
    annotations = {
        k: annotate_topic(model, k, lexicon, n) for k in range(model.K)
    }
    n_empty = sum(1 for a in annotations.values() if not a.synsets)
    if n_empty:
        log.warning(
            "%d of %d topics have no in-lexicon top words", n_empty, model.K
        )
    return annotations


def save_annotations(
    annotations: dict[int, TopicAnnotation], lang: str, path: str | Path
) -> None:
    obj = {
        "format": ANNOTATIONS_FORMAT,
        "lang": lang,
        "annotations": {str(k): sorted(a.synsets) for k, a in annotations.items()},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, ensure_ascii=False, sort_keys=True)
        fh.write("\n")


def load_annotations(path: str | Path) -> dict[int, TopicAnnotation]:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if obj.get("format") != ANNOTATIONS_FORMAT:
        raise ValueError(f"unsupported annotations format: {obj.get('format')!r}")
    return {
        int(k): TopicAnnotation(int(k), frozenset(v))
        for k, v in obj["annotations"].items()
    }
