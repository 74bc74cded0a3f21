"""From raw JSON-Lines documents to a filtered bag-of-words space.

Walks the ingestion path: read a corpus file, drop too-short texts,
tokenize with the fallback lemmatizer, build the document-frequency
filtered vocabulary and convert documents to bags of words.
"""

import json
import tempfile
from pathlib import Path

from synsim import (
    FallbackLemmatizer,
    build_vocabulary,
    filter_short,
    ingest_corpus,
    to_bow,
    tokenize,
)

DOCS = [
    {"id": "news-1", "lang": "en", "labels": ["media"],
     "text": "Radio networks broadcast the morning news across the region. "
             "Stations coordinate frequencies and share transmitters daily. "
             "Regulators audit the spectrum allocations every quarter."},
    {"id": "news-2", "lang": "en", "labels": ["media", "technology"],
     "text": "Digital radio equipment replaces analog transmitters in urban "
             "networks. Engineers tune antennas while operators monitor the "
             "broadcast spectrum for interference and coverage gaps."},
    {"id": "farm-1", "lang": "en", "labels": ["agriculture"],
     "text": "Harvest season brings combines to the wheat fields at dawn. "
             "Farmers rotate crops and monitor soil moisture, storing grain "
             "in silos before the first frost settles over the valley."},
    {"id": "stub", "lang": "en", "text": "Too short to keep."},
]


def main():
    with tempfile.TemporaryDirectory() as tmp:
        corpus_path = Path(tmp) / "corpus.jsonl"
        corpus_path.write_text(
            "".join(json.dumps(d) + "\n" for d in DOCS), encoding="utf-8"
        )

        docs = ingest_corpus(corpus_path, "en")
        print(f"ingested {len(docs)} documents")

        kept = filter_short(docs, min_chars=100)
        print(f"length filter kept {len(kept)} of {len(docs)} "
              f"(dropped: {[d.id for d in docs if d not in kept]})")

        lemmatizer = FallbackLemmatizer()
        token_lists = [tokenize(d.text, d.lang, lemmatizer) for d in kept]
        for doc, tokens in zip(kept, token_lists):
            print(f"  {doc.id}: {len(tokens)} tokens, first five {tokens[:5]}")

        # min_df=0 keeps rare terms: this corpus is far too small for the
        # default 0.5% floor to be meaningful
        vocab = build_vocabulary(token_lists, max_df=0.90, min_df=0.0)
        print(f"\nvocabulary: {len(vocab)} terms after df filtering")
        print("most document-frequent terms:",
              [(t, round(vocab.doc_freq[i], 2)) for i, t in enumerate(vocab.terms[:6])])
        print("'the' was removed as a stopword:", "the" not in vocab)

        bow = to_bow(token_lists[0], vocab)
        named = {vocab.terms[t]: c for t, c in sorted(bow.items())}
        print(f"\nbag of words for {kept[0].id}: {named}")


if __name__ == "__main__":
    main()
