import math

import pytest

from synsim import Vocabulary, build_vocabulary, load_vocabulary, save_vocabulary, to_bow


def _corpus_with_df(n_docs, memberships):
    """Token lists where term t appears in exactly memberships[t] documents."""
    docs = [[] for _ in range(n_docs)]
    for term, count in memberships.items():
        for d in range(count):
            docs[d].append(term)
    # pad so no document is empty
    for d in range(n_docs):
        docs[d].append(f"pad{d % 7}")
    return docs


class TestThresholds:
    def test_91_percent_excluded(self):
        docs = _corpus_with_df(100, {"common": 91, "fine": 50})
        vocab = build_vocabulary(docs)
        assert "common" not in vocab
        assert "fine" in vocab

    def test_point4_percent_excluded(self):
        docs = _corpus_with_df(250, {"rare": 1, "fine": 100})  # df 0.004
        vocab = build_vocabulary(docs)
        assert "rare" not in vocab
        assert "fine" in vocab

    def test_boundaries_are_inclusive(self):
        docs = _corpus_with_df(1000, {"atmax": 900, "atmin": 5})
        vocab = build_vocabulary(docs)
        assert "atmax" in vocab and "atmin" in vocab

    def test_half_df_retained_with_exact_fraction(self):
        docs = _corpus_with_df(10, {"term": 5})
        vocab = build_vocabulary(docs)
        tid = vocab.index["term"]
        assert vocab.doc_freq[tid] == 0.5

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            build_vocabulary([])

    def test_bad_threshold_order_rejected(self):
        with pytest.raises(ValueError):
            build_vocabulary([["a"]], max_df=0.1, min_df=0.5)


class TestOrdering:
    def test_descending_df_then_lexicographic(self):
        docs = [["b", "c"], ["b", "a"], ["a"]]
        vocab = build_vocabulary(docs, min_df=0.0)
        # a and b both df 2/3, c df 1/3
        assert vocab.terms == ["a", "b", "c"]

    def test_deterministic(self):
        docs = [["x", "y", "z"], ["y", "z"], ["z", "q"]]
        a = build_vocabulary(docs, min_df=0.0)
        b = build_vocabulary(docs, min_df=0.0)
        assert a.terms == b.terms and a.doc_freq == b.doc_freq

    def test_min_support_recount(self):
        import numpy as np
        rng = np.random.default_rng(5)
        n = 40
        docs = [
            [f"t{rng.integers(0, 30)}" for _ in range(rng.integers(1, 12))]
            for _ in range(n)
        ]
        min_df = 0.1
        vocab = build_vocabulary(docs, min_df=min_df)
        for term in vocab.terms:
            support = sum(1 for d in docs if term in d)
            assert support >= math.ceil(min_df * n)


class TestBagOfWords:
    def test_all_oov_gives_empty(self):
        vocab = Vocabulary(["a"], [1.0])
        assert to_bow(["zz", "qq"], vocab) == {}

    def test_direct_counts(self):
        vocab = Vocabulary(["a", "b"], [1.0, 0.5])
        assert to_bow(["a", "a", "b"], vocab) == {0: 2, 1: 1}

    def test_oov_dropped(self):
        vocab = Vocabulary(["a"], [1.0])
        assert to_bow(["a", "zz", "a"], vocab) == {0: 2}


class TestSerialization:
    def test_roundtrip(self, tmp_path):
        vocab = build_vocabulary([["a", "b"], ["b"], ["c", "b"]], min_df=0.0)
        path = tmp_path / "vocab.json"
        save_vocabulary(vocab, path)
        loaded = load_vocabulary(path)
        assert loaded.terms == vocab.terms
        assert loaded.doc_freq == vocab.doc_freq
        assert loaded.index == vocab.index

    def test_unknown_format_rejected(self, tmp_path):
        path = tmp_path / "vocab.json"
        path.write_text('{"format": "nope", "terms": [], "doc_freq": []}')
        with pytest.raises(ValueError, match="format"):
            load_vocabulary(path)
