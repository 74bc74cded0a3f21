"""Synthetic bilingual corpora over a shared latent concept space.

Two pseudo-languages share the same concepts but have fully disjoint
surface vocabularies; a synthetic lexicon maps every surface word to
its concept's synset id. Because documents are generated from known
concept mixtures, cross-lingual relevance (same dominant concept) is
known by construction.
"""

import json
import string

import numpy as np

from synsim.rng import substream


def concept_words(lang: str, concept: int, n_words: int) -> list[str]:
    letters = string.ascii_lowercase
    return [f"{lang}c{letters[concept]}w{letters[w]}" for w in range(n_words)]


def synset_id(concept: int) -> str:
    return f"S{concept:02d}"


def lexicon_lines(lang: str, n_concepts: int, words_per_concept: int) -> str:
    lines = []
    for c in range(n_concepts):
        for word in concept_words(lang, c, words_per_concept):
            lines.append(f"{synset_id(c)}\t{word}")
    return "\n".join(lines) + "\n"


def generate_docs(
    lang: str,
    n_docs: int,
    n_concepts: int,
    words_per_concept: int,
    tokens_per_doc: int,
    seed: int,
    id_prefix: str = "",
):
    """Documents as (id, dominant_concept, tokens) triples.

    Dominant concepts rotate round-robin so every concept has the same
    share of documents. Word weights inside a concept are ranked so the
    strongest words are stable across samples.
    """
    rng = substream(seed, f"pseudolang:{lang}:{id_prefix}")
    word_lists = [concept_words(lang, c, words_per_concept) for c in range(n_concepts)]
    word_weights = np.arange(words_per_concept, 0, -1, dtype=float)
    word_weights /= word_weights.sum()

    docs = []
    for d in range(n_docs):
        dominant = d % n_concepts
        share = rng.uniform(0.65, 0.8)
        theta = np.full(n_concepts, 0.0)
        rest = rng.dirichlet(np.full(n_concepts - 1, 0.5)) * (1.0 - share)
        theta[:dominant] = rest[:dominant]
        theta[dominant + 1:] = rest[dominant:]
        theta[dominant] = share
        concepts = rng.choice(n_concepts, size=tokens_per_doc, p=theta)
        words = rng.choice(words_per_concept, size=tokens_per_doc, p=word_weights)
        tokens = [word_lists[c][w] for c, w in zip(concepts, words)]
        docs.append((f"{id_prefix}{lang}{d:04d}", dominant, tokens))
    return docs


def docs_to_jsonl(docs, lang: str, path, min_label: bool = True) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for doc_id, dominant, tokens in docs:
            row = {"id": doc_id, "lang": lang, "text": " ".join(tokens)}
            if min_label:
                row["labels"] = [f"C{dominant:02d}"]
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def taxonomy_lines(n_concepts: int) -> str:
    return "".join(f"C{c:02d}\tR{c:02d}\n" for c in range(n_concepts))


def build_cli_workspace(
    root,
    seed=5,
    languages=("aa", "bb"),
    workdir_name="run",
    n_concepts=12,
    words_per_concept=8,
    train_docs=72,
    eval_docs=24,
    tokens_per_doc=50,
    k=12,
    iterations=120,
):
    """Corpora, lexicons, taxonomy and a config file for CLI-driven runs."""
    from types import SimpleNamespace

    root.mkdir(parents=True, exist_ok=True)
    lines = [
        f"languages = {','.join(languages)}",
        f"workdir = {root / workdir_name}",
        f"k = {k}",
        f"iterations = {iterations}",
        f"seed = {seed}",
        "topn = 5",
        "infer_iterations = 40",
        "infer_burn_in = 20",
        "eval_sample = 48",
        "eval_queries = 12",
        f"taxonomy = {root / 'tax.tsv'}",
    ]
    (root / "tax.tsv").write_text(taxonomy_lines(n_concepts), encoding="utf-8")
    train_by_lang = {}
    for lang in languages:
        train = generate_docs(
            lang, train_docs, n_concepts, words_per_concept, tokens_per_doc, seed=77
        )
        heldout = generate_docs(
            lang, eval_docs, n_concepts, words_per_concept, tokens_per_doc,
            seed=78, id_prefix="ho-",
        )
        docs_to_jsonl(train, lang, root / f"train.{lang}.jsonl")
        docs_to_jsonl(heldout, lang, root / f"eval.{lang}.jsonl")
        (root / f"lex.{lang}.tsv").write_text(
            lexicon_lines(lang, n_concepts, words_per_concept), encoding="utf-8"
        )
        lines += [
            f"corpus.{lang} = {root / f'train.{lang}.jsonl'}",
            f"eval_corpus.{lang} = {root / f'eval.{lang}.jsonl'}",
            f"lexicon.{lang} = {root / f'lex.{lang}.tsv'}",
        ]
        train_by_lang[lang] = train
    cfg_path = root / "run.conf"
    cfg_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return SimpleNamespace(
        root=root,
        cfg=str(cfg_path),
        workdir=root / workdir_name,
        train_docs=train_by_lang,
    )
