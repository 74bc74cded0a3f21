import numpy as np
import pytest

from synsim import (
    Vocabulary,
    infer,
    load_model,
    save_model,
    top_words,
    train_labeled_lda,
    train_lda,
)
from synsim.topics import model_from_dict, model_to_dict


@pytest.fixture(scope="module")
def two_word_vocab():
    return Vocabulary(["w", "u"], [0.9, 0.1])


@pytest.fixture(scope="module")
def skew_corpus():
    # many identical one-word documents plus a tiny second-word group
    # that breaks the topic symmetry
    return [{0: 10}] * 30 + [{1: 10}] * 2


class TestTrainLda:
    def test_one_topic_absorbs_repeated_word(self, two_word_vocab, skew_corpus):
        model = train_lda(skew_corpus, two_word_vocab, K=2, iterations=300, seed=7)
        w_counts = model.topic_word_counts[:, 0]
        dominant = int(w_counts.argmax())
        assert w_counts[dominant] / w_counts.sum() > 0.9
        theta = infer(model, {0: 10}, 100, 50, seed=3)
        assert theta[dominant] > 0.9

    def test_same_seed_identical_counts(self, two_word_vocab, skew_corpus):
        a = train_lda(skew_corpus, two_word_vocab, K=2, iterations=50, seed=11)
        b = train_lda(skew_corpus, two_word_vocab, K=2, iterations=50, seed=11)
        assert np.array_equal(a.topic_word_counts, b.topic_word_counts)
        assert np.array_equal(a.topic_totals, b.topic_totals)

    def test_count_conservation_every_sweep(self, two_word_vocab, skew_corpus):
        total = sum(sum(b.values()) for b in skew_corpus)
        seen = []

        def check(state):
            assert int(state.topic_totals.sum()) == total
            assert np.array_equal(state.topic_word_counts.sum(axis=1),
                                  state.topic_totals)
            seen.append(state.sweep)

        train_lda(skew_corpus, two_word_vocab, K=2, iterations=40, seed=3,
                  on_sweep=check)
        assert seen == list(range(40))

    def test_empty_bows_skipped_with_warning(self, two_word_vocab, caplog):
        bows = [{0: 5}, {}, {1: 3}, {}]
        with caplog.at_level("WARNING"):
            model = train_lda(bows, two_word_vocab, K=2, iterations=5, seed=0)
        assert model.topic_totals.sum() == 8
        assert any("empty" in r.message for r in caplog.records)

    def test_all_empty_corpus_rejected(self, two_word_vocab):
        with pytest.raises(ValueError, match="empty"):
            train_lda([{}, {}], two_word_vocab, K=2, iterations=5, seed=0)

    def test_more_topics_than_tokens_rejected(self, two_word_vocab):
        with pytest.raises(ValueError, match="token"):
            train_lda([{0: 1}, {1: 1}], two_word_vocab, K=3, iterations=5, seed=0)

    def test_parameter_validation(self, two_word_vocab):
        with pytest.raises(ValueError):
            train_lda([{0: 5}], two_word_vocab, K=1, iterations=5, seed=0)
        with pytest.raises(ValueError):
            train_lda([{0: 5}], two_word_vocab, K=2, iterations=0, seed=0)


class TestTrainLabeledLda:
    def test_single_label_gets_smoothed_unigram(self):
        vocab = Vocabulary(["a", "b", "c"], [1.0, 1.0, 1.0])
        bows = [{0: 3, 1: 1}, {0: 2, 2: 4}, {1: 5}]
        model = train_labeled_lda(bows, [{"L"}] * 3, ["L", "M"], vocab,
                                  iterations=20, seed=5)
        k = model.topic_labels.index("L")
        other = model.topic_labels.index("M")
        corpus_counts = np.zeros(3, dtype=np.int64)
        for bow in bows:
            for t, c in bow.items():
                corpus_counts[t] += c
        assert np.array_equal(model.topic_word_counts[k], corpus_counts)
        assert model.topic_totals[other] == 0
        expected = (corpus_counts + model.beta) / (
            corpus_counts.sum() + 3 * model.beta
        )
        got = dict(top_words(model, k, 3))
        for t, term in enumerate(vocab.terms):
            assert got[term] == pytest.approx(expected[t])

    def test_disjoint_groups_have_disjoint_top_words(self):
        vocab = Vocabulary([f"g0w{i}" for i in range(5)] +
                           [f"g1w{i}" for i in range(5)], [0.5] * 10)
        rng = np.random.default_rng(2)
        bows, labels = [], []
        for d in range(40):
            group = d % 2
            terms = range(0, 5) if group == 0 else range(5, 10)
            bow = {}
            for _ in range(30):
                t = int(rng.choice(list(terms)))
                bow[t] = bow.get(t, 0) + 1
            bows.append(bow)
            labels.append({f"G{group}"})
        model = train_labeled_lda(bows, labels, ["G0", "G1"], vocab,
                                  iterations=30, seed=9)
        for k, label in enumerate(model.topic_labels):
            group = int(label[1])
            words = {w for w, _ in top_words(model, k, 5)}
            assert all(w.startswith(f"g{group}") for w in words)

    def test_topics_never_leave_label_set(self):
        vocab = Vocabulary(["a", "b"], [1.0, 1.0])
        bows = [{0: 4}, {1: 4}, {0: 2, 1: 2}]
        labels = [{"X"}, {"Y", "Z"}, {"Z"}]
        universe = ["X", "Y", "Z"]
        allowed = [
            {universe.index(l) for l in labs} for labs in labels
        ]

        def check(state):
            for t in range(state.z.shape[0]):
                assert int(state.z[t]) in allowed[int(state.doc_of[t])]

        train_labeled_lda(bows, labels, universe, vocab, iterations=30,
                          seed=1, on_sweep=check)

    def test_label_outside_universe_rejected(self):
        vocab = Vocabulary(["a"], [1.0])
        with pytest.raises(ValueError, match="universe"):
            train_labeled_lda([{0: 1}], [{"nope"}], ["A", "B"], vocab,
                              iterations=1, seed=0)

    def test_unlabeled_documents_skipped(self, caplog):
        vocab = Vocabulary(["a", "b"], [1.0, 1.0])
        bows = [{0: 4}, {1: 6}]
        with caplog.at_level("WARNING"):
            model = train_labeled_lda(bows, [{"A"}, set()], ["A", "B"], vocab,
                                      iterations=10, seed=0)
        assert model.topic_totals.sum() == 4
        assert any("unlabeled" in r.message for r in caplog.records)

    def test_universe_validation(self):
        vocab = Vocabulary(["a"], [1.0])
        with pytest.raises(ValueError):
            train_labeled_lda([{0: 1}], [{"A"}], ["A"], vocab, iterations=1, seed=0)
        with pytest.raises(ValueError):
            train_labeled_lda([{0: 1}], [{"A"}], ["A", "A"], vocab,
                              iterations=1, seed=0)


@pytest.fixture(scope="module")
def disjoint_model():
    # topics with fully disjoint vocabularies: 0 owns terms 0-4, 1 owns 5-9
    vocab = Vocabulary([f"t{i}" for i in range(10)], [0.5] * 10)
    counts = np.zeros((2, 10), dtype=np.int64)
    counts[0, :5] = 200
    counts[1, 5:] = 200
    from synsim.topics import TopicModel
    return TopicModel(2, 0.1, 0.01, vocab, counts, counts.sum(axis=1),
                      seed=0, iterations=1)


class TestInfer:
    def test_empty_bow_gives_uniform(self, disjoint_model):
        theta = infer(disjoint_model, {}, 100, 50, seed=0)
        assert np.allclose(theta, 0.5)
        assert abs(theta.sum() - 1.0) < 1e-9

    def test_out_of_vocab_terms_dropped(self, disjoint_model):
        theta = infer(disjoint_model, {99: 4}, 100, 50, seed=0)
        assert np.allclose(theta, 0.5)

    def test_exclusive_words_concentrate_mass(self, disjoint_model):
        theta = infer(disjoint_model, {0: 5, 1: 5, 2: 5}, 100, 50, seed=4)
        assert theta[0] > 0.9
        assert abs(theta.sum() - 1.0) < 1e-9

    def test_same_seed_identical_output(self, disjoint_model):
        a = infer(disjoint_model, {0: 3, 7: 2}, 80, 40, seed=21)
        b = infer(disjoint_model, {0: 3, 7: 2}, 80, 40, seed=21)
        assert np.array_equal(a, b)

    def test_iterations_must_exceed_burn_in(self, disjoint_model):
        with pytest.raises(ValueError):
            infer(disjoint_model, {0: 1}, 50, 50, seed=0)

    def test_distribution_sums_to_one(self, disjoint_model):
        rng = np.random.default_rng(8)
        for _ in range(10):
            bow = {int(t): int(rng.integers(1, 5)) for t in rng.choice(10, 3)}
            theta = infer(disjoint_model, bow, 60, 30, seed=int(rng.integers(1000)))
            assert abs(theta.sum() - 1.0) < 1e-9


class TestTopWords:
    def test_uniform_counts_tie_break_lexicographic(self):
        vocab = Vocabulary(["pear", "apple", "fig"], [0.5] * 3)
        counts = np.full((2, 3), 4, dtype=np.int64)
        from synsim.topics import TopicModel
        model = TopicModel(2, 0.1, 0.01, vocab, counts, counts.sum(axis=1),
                           seed=0, iterations=1)
        assert [w for w, _ in top_words(model, 0, 2)] == ["apple", "fig"]

    def test_probabilities_are_smoothed(self):
        vocab = Vocabulary(["a", "b"], [0.5, 0.5])
        counts = np.array([[3, 1], [0, 4]], dtype=np.int64)
        from synsim.topics import TopicModel
        model = TopicModel(2, 0.1, 0.01, vocab, counts, counts.sum(axis=1),
                           seed=0, iterations=1)
        words = top_words(model, 0, 2)
        assert words[0][0] == "a"
        assert words[0][1] == pytest.approx((3 + 0.01) / (4 + 2 * 0.01))

    def test_bounds_checked(self, two_word_vocab):
        model = train_lda([{0: 5}, {1: 5}], two_word_vocab, K=2,
                          iterations=5, seed=0)
        with pytest.raises(ValueError):
            top_words(model, 2, 1)
        with pytest.raises(ValueError):
            top_words(model, 0, 0)


class TestModelSerialization:
    def test_roundtrip_and_byte_stability(self, tmp_path, two_word_vocab, skew_corpus):
        model = train_lda(skew_corpus, two_word_vocab, K=2, iterations=20, seed=13)
        p1, p2 = tmp_path / "m1.json", tmp_path / "m2.json"
        save_model(model, p1)
        loaded = load_model(p1)
        assert np.array_equal(loaded.topic_word_counts, model.topic_word_counts)
        assert loaded.vocab.terms == model.vocab.terms
        assert loaded.lang == model.lang and loaded.seed == model.seed
        save_model(loaded, p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_sparse_encoding_roundtrip(self):
        vocab = Vocabulary([f"w{i}" for i in range(50)], [0.5] * 50)
        counts = np.zeros((4, 50), dtype=np.int64)
        counts[0, 3] = 7
        counts[2, 10] = 1
        from synsim.topics import TopicModel
        model = TopicModel(4, 0.1, 0.01, vocab, counts, counts.sum(axis=1),
                           seed=0, iterations=1)
        obj = model_to_dict(model)
        assert obj["topic_word_counts"]["encoding"] == "sparse"
        assert np.array_equal(model_from_dict(obj).topic_word_counts, counts)

    def test_load_validates_count_conservation(self, tmp_path, two_word_vocab):
        model = train_lda([{0: 5}, {1: 5}], two_word_vocab, K=2,
                          iterations=5, seed=0)
        obj = model_to_dict(model)
        obj["topic_totals"][0] += 1
        with pytest.raises(ValueError, match="inconsistent"):
            model_from_dict(obj)

    def test_labeled_model_keeps_labels(self, tmp_path):
        vocab = Vocabulary(["a", "b"], [1.0, 1.0])
        model = train_labeled_lda([{0: 2}, {1: 2}], [{"X"}, {"Y"}],
                                  ["X", "Y"], vocab, iterations=5, seed=0)
        path = tmp_path / "m.json"
        save_model(model, path)
        assert load_model(path).topic_labels == ["X", "Y"]
