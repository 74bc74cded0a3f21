"""Per-language topic models trained by collapsed Gibbs sampling.

``train_lda`` fits a plain LDA model: each token's topic assignment is
resampled from the full conditional

    p(k) ∝ (n_dk + alpha) * (n_kw + beta) / (n_k + V*beta)

where the counts exclude the token being resampled. ``train_labeled_lda``
fits the supervised variant with one topic per category label, where a
document's admissible topics are restricted to its own labels. Both are
deterministic for a fixed seed (single-threaded), and the counts after
the final sweep define the model. New documents are folded in against
frozen topic-word counts by ``infer``.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, NamedTuple, Sequence

import numpy as np

from ._gibbs import fold_in, gibbs_sweep
from .rng import substream
from .vocabulary import Vocabulary, vocabulary_from_dict, vocabulary_to_dict

log = logging.getLogger(__name__)

FORMAT = "synsim-topic-model/1"


@dataclass
class TopicModel:
    """Topic-word statistics of a trained model plus its configuration."""

    K: int
    alpha: float
    beta: float
    vocab: Vocabulary
    topic_word_counts: np.ndarray  # (K, V) int64
    topic_totals: np.ndarray  # (K,) int64
    seed: int
    iterations: int
    lang: str = ""
    topic_labels: list[str] | None = None  # present only for labeled models

    def __post_init__(self):
        validate_counts(self.topic_word_counts, self.topic_totals)
        if self.K < 2:
            raise ValueError("K must be >= 2")
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")


class SweepState(NamedTuple):
    """Sampler internals exposed to per-sweep callbacks (read-only)."""

    sweep: int
    z: np.ndarray
    doc_of: np.ndarray
    word_of: np.ndarray
    doc_topic_counts: np.ndarray
    topic_word_counts: np.ndarray
    topic_totals: np.ndarray


OnSweep = Callable[[SweepState], None]


def validate_counts(topic_word_counts: np.ndarray, topic_totals: np.ndarray) -> None:
    """Check count conservation: totals equal the row sums, all >= 0."""
    if (topic_word_counts < 0).any() or (topic_totals < 0).any():
        raise ValueError("topic counts must be nonnegative")
    if not np.array_equal(topic_word_counts.sum(axis=1), topic_totals):
        raise ValueError("topic_totals inconsistent with topic_word_counts")


def _expand_tokens(bows: Sequence[dict[int, int]], eligible: list[bool], V: int):
    """Flatten bags into parallel (doc, word) arrays, ascending term order."""
    doc_idx: list[int] = []
    word_idx: list[int] = []
    for d, bow in enumerate(bows):
        if not eligible[d]:
            continue
        for term in sorted(bow):
            count = bow[term]
            if not 0 <= term < V:
                raise ValueError(f"term id {term} outside vocabulary of size {V}")
            if count < 1:
                raise ValueError("bag-of-words counts must be >= 1")
            doc_idx.extend([d] * count)
            word_idx.extend([term] * count)
    return (
        np.asarray(doc_idx, dtype=np.int32),
        np.asarray(word_idx, dtype=np.int32),
    )


def _count_matrices(doc_of, word_of, z, n_docs: int, K: int, V: int):
    n_dk = np.zeros((n_docs, K), dtype=np.int64)
    n_kw = np.zeros((K, V), dtype=np.int64)
    np.add.at(n_dk, (doc_of, z), 1)
    np.add.at(n_kw, (z, word_of), 1)
    return n_dk, n_kw, n_kw.sum(axis=1)


def _run_training(
    doc_of,
    word_of,
    n_docs: int,
    K: int,
    V: int,
    alpha: float,
    beta: float,
    iterations: int,
    rng: np.random.Generator,
    allowed_idx: np.ndarray,
    allowed_off: np.ndarray,
    restricted: bool,
    on_sweep: OnSweep | None,
):
    n_tokens = doc_of.shape[0]
    if restricted:
        # initial topics drawn uniformly from each document's admissible set
        z = np.empty(n_tokens, dtype=np.int32)
        for t in range(n_tokens):
            d = doc_of[t]
            opts = allowed_idx[allowed_off[d] : allowed_off[d + 1]]
            z[t] = opts[rng.integers(opts.shape[0])]
    else:
        z = rng.integers(0, K, n_tokens, dtype=np.int32)

    n_dk, n_kw, n_k = _count_matrices(doc_of, word_of, z, n_docs, K, V)
    buf = np.empty(K, dtype=np.float64)
    for sweep in range(iterations):
        gibbs_sweep(
            doc_of, word_of, z, n_dk, n_kw, n_k,
            float(alpha), float(beta), rng.random(n_tokens), buf,
            allowed_idx, allowed_off, restricted,
        )
        if on_sweep is not None:
            on_sweep(SweepState(sweep, z, doc_of, word_of, n_dk, n_kw, n_k))
    return n_kw, n_k


_NO_ALLOWED_IDX = np.zeros(0, dtype=np.int32)


def train_lda(
    bows: Sequence[dict[int, int]],
    vocab: Vocabulary,
    K: int,
    alpha: float = 0.1,
    beta: float = 0.01,
    iterations: int = 1000,
    seed: int = 0,
    lang: str = "",
    on_sweep: OnSweep | None = None,
) -> TopicModel:
    """Train an LDA model on bags of words over `vocab`.

    Empty bags are skipped with a warning; an all-empty corpus or more
    topics than tokens is an error. Two runs with the same arguments
    produce identical counts.
    """
    if K < 2:
        raise ValueError("K must be >= 2")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    V = len(vocab)
    eligible = [len(b) > 0 for b in bows]
    n_empty = eligible.count(False)
    if n_empty:
        log.warning("skipping %d empty documents for training", n_empty)
    doc_of, word_of = _expand_tokens(bows, eligible, V)
    if doc_of.shape[0] == 0:
        raise ValueError("cannot train on an all-empty corpus")
    if K > doc_of.shape[0]:
        raise ValueError(f"K={K} exceeds the total token count {doc_of.shape[0]}")

    rng = substream(seed, "lda-train")
    allowed_off = np.zeros(len(bows) + 1, dtype=np.int64)
    n_kw, n_k = _run_training(
        doc_of, word_of, len(bows), K, V, alpha, beta, iterations, rng,
        _NO_ALLOWED_IDX, allowed_off, False, on_sweep,
    )
    return TopicModel(K, alpha, beta, vocab, n_kw, n_k, seed, iterations, lang)


def train_labeled_lda(
    bows: Sequence[dict[int, int]],
    doc_labels: Sequence[set[str]],
    label_universe: Sequence[str],
    vocab: Vocabulary,
    alpha: float = 0.1,
    beta: float = 0.01,
    iterations: int = 1000,
    seed: int = 0,
    lang: str = "",
    on_sweep: OnSweep | None = None,
) -> TopicModel:
    """Train the supervised variant with one topic per label.

    Topic k is identified with label_universe[k]; sampling restricts
    each document's admissible topics to its own label set. Documents
    with empty labels (or empty bags) are skipped with a warning.
    """
    if len(bows) != len(doc_labels):
        raise ValueError("bows and doc_labels must have equal length")
    universe = list(label_universe)
    if len(set(universe)) != len(universe):
        raise ValueError("label_universe must not repeat labels")
    if len(universe) < 2:
        raise ValueError("label_universe must contain at least 2 labels")
    topic_of_label = {label: k for k, label in enumerate(universe)}
    K = len(universe)
    V = len(vocab)

    for labels in doc_labels:
        unknown = set(labels) - topic_of_label.keys()
        if unknown:
            raise ValueError(f"labels outside the universe: {sorted(unknown)}")

    eligible = [len(b) > 0 and len(l) > 0 for b, l in zip(bows, doc_labels)]
    n_skipped = eligible.count(False)
    if n_skipped:
        log.warning("skipping %d unlabeled or empty documents for training", n_skipped)
    doc_of, word_of = _expand_tokens(bows, eligible, V)
    if doc_of.shape[0] == 0:
        raise ValueError("cannot train on an all-empty corpus")

    allowed_lists = []
    for d, labels in enumerate(doc_labels):
        if eligible[d]:
            allowed_lists.append(sorted(topic_of_label[l] for l in labels))
        else:
            allowed_lists.append([0])  # placeholder, never sampled
    allowed_off = np.zeros(len(bows) + 1, dtype=np.int64)
    for d, lst in enumerate(allowed_lists):
        allowed_off[d + 1] = allowed_off[d] + len(lst)
    allowed_idx = np.asarray(
        [k for lst in allowed_lists for k in lst], dtype=np.int32
    )

    rng = substream(seed, "labeled-lda-train")
    n_kw, n_k = _run_training(
        doc_of, word_of, len(bows), K, V, alpha, beta, iterations, rng,
        allowed_idx, allowed_off, True, on_sweep,
    )
    return TopicModel(
        K, alpha, beta, vocab, n_kw, n_k, seed, iterations, lang,
        topic_labels=universe,
    )


def infer(
    model: TopicModel,
    bow: dict[int, int],
    iterations: int = 100,
    burn_in: int = 50,
    seed: int = 0,
) -> np.ndarray:
    """Estimate a document's topic distribution against a trained model.

    Topic-word counts stay frozen; the returned vector is the average of
    the smoothed per-sweep proportions after burn-in, normalized to sum
    to 1. An effectively empty bag yields the uniform distribution.
    """
    if iterations <= burn_in:
        raise ValueError("iterations must exceed burn_in")
    if burn_in < 0:
        raise ValueError("burn_in must be >= 0")
    K = model.K
    V = len(model.vocab)
    effective = {t: c for t, c in bow.items() if 0 <= t < V}
    if not effective:
        return np.full(K, 1.0 / K)

    word_idx: list[int] = []
    for term in sorted(effective):
        word_idx.extend([term] * effective[term])
    word_of = np.asarray(word_idx, dtype=np.int32)

    rng = substream(seed, "lda-infer")
    z = rng.integers(0, K, word_of.shape[0], dtype=np.int32)
    doc_topic = np.bincount(z, minlength=K).astype(np.int64)
    theta_acc = np.zeros(K, dtype=np.float64)
    buf = np.empty(K, dtype=np.float64)
    fold_in(
        word_of, z, doc_topic,
        model.topic_word_counts, model.topic_totals,
        float(model.alpha), float(model.beta),
        rng.random((iterations, word_of.shape[0])),
        burn_in, theta_acc, buf,
    )
    theta = theta_acc / (iterations - burn_in)
    return theta / theta.sum()


def top_words(model: TopicModel, topic: int, n: int) -> list[tuple[str, float]]:
    """The n most probable words of a topic, with smoothed probabilities.

    Probability of word w under topic k is (n_kw + beta) / (n_k + V*beta);
    ties are broken lexicographically.
    """
    if not 0 <= topic < model.K:
        raise ValueError(f"topic {topic} out of range [0, {model.K})")
    if n < 1:
        raise ValueError("n must be >= 1")
    V = len(model.vocab)
    counts = model.topic_word_counts[topic]
    probs = (counts + model.beta) / (model.topic_totals[topic] + V * model.beta)
    ranked = sorted(zip(model.vocab.terms, probs), key=lambda p: (-p[1], p[0]))
    return [(term, float(prob)) for term, prob in ranked[:n]]


def model_to_dict(model: TopicModel) -> dict:
    K, V = model.topic_word_counts.shape
    nnz = int(np.count_nonzero(model.topic_word_counts))
    if nnz * 3 < K * V:
        ks, ws = np.nonzero(model.topic_word_counts)
        counts = {
            "encoding": "sparse",
            "shape": [K, V],
            "entries": [
                [int(k), int(w), int(model.topic_word_counts[k, w])]
                for k, w in zip(ks, ws)
            ],
        }
    else:
        counts = {"encoding": "dense", "rows": model.topic_word_counts.tolist()}
    return {
        "format": FORMAT,
        "kind": "labeled-lda" if model.topic_labels is not None else "lda",
        "K": model.K,
        "alpha": model.alpha,
        "beta": model.beta,
        "seed": model.seed,
        "iterations": model.iterations,
        "lang": model.lang,
        "vocab": vocabulary_to_dict(model.vocab),
        "topic_word_counts": counts,
        "topic_totals": model.topic_totals.tolist(),
        "topic_labels": model.topic_labels,
    }


def model_from_dict(obj: dict) -> TopicModel:
    if obj.get("format") != FORMAT:
        raise ValueError(f"unsupported model format: {obj.get('format')!r}")
    vocab = vocabulary_from_dict(obj["vocab"])
    enc = obj["topic_word_counts"]
    if enc["encoding"] == "dense":
        n_kw = np.asarray(enc["rows"], dtype=np.int64)
    elif enc["encoding"] == "sparse":
        K, V = enc["shape"]
        n_kw = np.zeros((K, V), dtype=np.int64)
        for k, w, c in enc["entries"]:
            n_kw[k, w] = c
    else:
        raise ValueError(f"unknown count encoding {enc['encoding']!r}")
    totals = np.asarray(obj["topic_totals"], dtype=np.int64)
    validate_counts(n_kw, totals)  # loads must reject corrupted containers
    return TopicModel(
        int(obj["K"]), float(obj["alpha"]), float(obj["beta"]), vocab,
        n_kw, totals, int(obj["seed"]), int(obj["iterations"]),
        str(obj.get("lang", "")),
        list(obj["topic_labels"]) if obj.get("topic_labels") is not None else None,
    )


def save_model(model: TopicModel, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, ensure_ascii=False, sort_keys=True)
        fh.write("\n")


def load_model(path: str | Path) -> TopicModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
