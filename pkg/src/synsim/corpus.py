"""Corpus ingestion, tokenization and document-level filtering.

Corpus files are JSON Lines: one object per line with fields ``id``
(string), ``lang`` (string), ``text`` (string) and optional ``labels``
(array of strings), UTF-8 encoded.

Tokenization goes through a pluggable lemmatizer. A lemmatizer maps
(text, lang) to a list of (lemma, coarse POS) pairs; when it is
POS-aware only nouns, verbs and adjectives are kept, otherwise every
token it emits survives. The shipped fallback is deterministic and
knows no morphology: it lowercases and keeps alphabetic runs of length
at least two.
"""

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Protocol

log = logging.getLogger(__name__)

NOUN = "NOUN"
VERB = "VERB"
ADJ = "ADJ"
UNKNOWN = "UNKNOWN"

#: POS tags retained by POS-aware tokenization (content words only).
CONTENT_POS = frozenset({NOUN, VERB, ADJ})

# Alphabetic runs of length >= 2; excludes digits and underscore.
_WORD_RE = re.compile(r"[^\W\d_]{2,}", re.UNICODE)


@dataclass(frozen=True)
class Document:
    """A raw document with language tag and optional category labels."""

    id: str
    lang: str
    text: str
    labels: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be nonempty")


class Lemmatizer(Protocol):
    """Pluggable lemmatization interface.

    ``pos_aware`` tells `tokenize` whether the POS tags are meaningful;
    lemmatizers that cannot tag should set it False and return UNKNOWN.
    """

    pos_aware: bool

    def lemmatize(self, text: str, lang: str) -> list[tuple[str, str]]: ...


class FallbackLemmatizer:
    """Deterministic no-morphology lemmatizer.

    Lowercases and keeps alphabetic tokens of length >= 2; every token
    is tagged UNKNOWN. Useful when no real lemmatizer is available for
    a language, and as the reproducible default.
    """

    pos_aware = False

    def lemmatize(self, text: str, lang: str) -> list[tuple[str, str]]:
        return [(m.group(0).lower(), UNKNOWN) for m in _WORD_RE.finditer(text)]


class TableLemmatizer:
    """Lemmatizer backed by a surface-form lookup table.

    ``table`` maps lowercased surface forms to (lemma, pos) pairs.
    Words missing from the table are passed through tagged UNKNOWN,
    which a POS-aware tokenization run will drop.
    """

    pos_aware = True

    def __init__(self, table: dict[str, tuple[str, str]]):
        self.table = {k.lower(): v for k, v in table.items()}

    def lemmatize(self, text: str, lang: str) -> list[tuple[str, str]]:
        out = []
        for m in _WORD_RE.finditer(text):
            word = m.group(0).lower()
            out.append(self.table.get(word, (word, UNKNOWN)))
        return out


def _normalize_lemma(lemma: str) -> str:
    """Lowercase and join internal whitespace so tokens stay space-free."""
    return "_".join(lemma.lower().split())


def tokenize(text: str, lang: str, lemmatizer: Lemmatizer) -> list[str]:
    """Turn raw text into a list of content-word lemmas.

    With a POS-aware lemmatizer only nouns, verbs and adjectives are
    kept; otherwise all emitted tokens are kept. Tokens are lowercased
    and never contain whitespace. Empty text yields an empty list.
    """
    pairs = lemmatizer.lemmatize(text, lang)
    if lemmatizer.pos_aware:
        pairs = [(lemma, pos) for lemma, pos in pairs if pos in CONTENT_POS]
    tokens = [_normalize_lemma(lemma) for lemma, _ in pairs]
    return [t for t in tokens if t]


def ingest_corpus(path: str | Path, lang: str) -> list[Document]:
    """Read a JSON Lines corpus file, one Document per line, in order.

    Raises ValueError naming the offending line for malformed JSON,
    missing/invalid fields, a language tag different from `lang`, or a
    duplicate id.
    """
    docs: list[Document] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: malformed JSON: {exc.msg}") from exc
            if not isinstance(obj, dict):
                raise ValueError(f"{path}:{lineno}: expected a JSON object")
            for fieldname in ("id", "lang", "text"):
                if fieldname not in obj:
                    raise ValueError(f"{path}:{lineno}: missing field {fieldname!r}")
                if not isinstance(obj[fieldname], str):
                    raise ValueError(f"{path}:{lineno}: field {fieldname!r} must be a string")
            if obj["lang"] != lang:
                raise ValueError(
                    f"{path}:{lineno}: document language {obj['lang']!r} does not match {lang!r}"
                )
            labels = obj.get("labels", [])
            if not isinstance(labels, list) or any(not isinstance(x, str) for x in labels):
                raise ValueError(f"{path}:{lineno}: field 'labels' must be an array of strings")
            if obj["id"] in seen:
                raise ValueError(f"{path}:{lineno}: duplicate document id {obj['id']!r}")
            seen.add(obj["id"])
            docs.append(Document(obj["id"], obj["lang"], obj["text"], frozenset(labels)))
    return docs


def serialize_corpus(docs: Iterable[Document], path: str | Path) -> None:
    """Write documents as JSON Lines; inverse of `ingest_corpus`."""
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            obj = {"id": doc.id, "lang": doc.lang, "text": doc.text,
                   "labels": sorted(doc.labels)}
            fh.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n")


def filter_short(docs: Iterable[Document], min_chars: int = 100) -> list[Document]:
    """Drop documents whose text has fewer than `min_chars` characters.

    Length is the Unicode scalar count of the raw text; a text of
    exactly `min_chars` characters survives. Order is preserved.
    """
    if min_chars < 0:
        raise ValueError("min_chars must be >= 0")
    return [d for d in docs if len(d.text) >= min_chars]


def load_lemma_file(path: str | Path) -> dict[str, list[str]]:
    """Load precomputed lemma streams keyed by document id.

    JSON Lines with fields ``id`` and ``tokens``; tokens are lowercased
    and whitespace-normalized. Used to override `tokenize` for ids that
    were lemmatized offline.
    """
    overrides: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: malformed JSON: {exc.msg}") from exc
            if "id" not in obj or "tokens" not in obj:
                raise ValueError(f"{path}:{lineno}: expected fields 'id' and 'tokens'")
            tokens = [_normalize_lemma(t) for t in obj["tokens"]]
            tokens = [t for t in tokens if t]
            if obj["id"] in overrides:
                raise ValueError(f"{path}:{lineno}: duplicate id {obj['id']!r}")
            overrides[obj["id"]] = tokens
    return overrides


def tokenize_corpus(
    docs: Iterable[Document],
    lemmatizer: Lemmatizer,
    overrides: dict[str, list[str]] | None = None,
) -> dict[str, list[str]]:
    """Tokenize every document, honoring precomputed lemma overrides."""
    out: dict[str, list[str]] = {}
    for doc in docs:
        if overrides is not None and doc.id in overrides:
            out[doc.id] = list(overrides[doc.id])
        else:
            out[doc.id] = tokenize(doc.text, doc.lang, lemmatizer)
    return out
