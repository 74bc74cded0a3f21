import itertools
import math

import numpy as np
import pytest

from oracles import oracle_bcubed
from synsim import (
    Document,
    EvalReport,
    MetricStats,
    bcubed,
    build_ground_truth,
    overlap_clusters,
    precision_at_k,
    retrieval_report,
)


def set_partitions(items):
    """All partitions of a small sequence (restricted growth strings)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]
        yield [[first]] + partition


def as_mapping(partition):
    return {item: f"c{i}" for i, block in enumerate(partition) for item in block}


class TestBcubed:
    def test_perfect_clustering(self):
        keys = {f"d{i}": f"k{i % 3}" for i in range(9)}
        per_doc, report = bcubed(keys, dict(keys))
        assert all(v == (1.0, 1.0, 1.0) for v in per_doc.values())
        assert report.rows["precision"].mean == 1.0
        assert report.rows["recall"].mean == 1.0
        assert report.rows["f1"].mean == 1.0

    def test_single_system_cluster_against_two_halves(self):
        n = 20
        system = {f"d{i}": "all" for i in range(n)}
        gold = {f"d{i}": "left" if i < n // 2 else "right" for i in range(n)}
        per_doc, report = bcubed(system, gold)
        for p, r, f1 in per_doc.values():
            assert p == 0.5 and r == 1.0
            assert f1 == pytest.approx(2 * 0.5 * 1.0 / 1.5)
        assert report.rows["precision"].mean == 0.5
        assert report.rows["recall"].mean == 1.0

    def test_matches_pairwise_oracle_on_random_partitions(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            ids = [f"d{i}" for i in range(100)]
            system = {d: f"s{rng.integers(0, 8)}" for d in ids}
            gold = {d: f"g{rng.integers(0, 6)}" for d in ids}
            per_doc, _ = bcubed(system, gold)
            assert per_doc == oracle_bcubed(system, gold)

    def test_exhaustive_small_partitions(self):
        items = ["a", "b", "c", "d", "e"]
        partitions = [as_mapping(p) for p in set_partitions(items)]
        for system, gold in itertools.product(partitions, partitions):
            per_doc, report = bcubed(system, gold)
            want = oracle_bcubed(system, gold)
            assert per_doc == want
            for doc, (p, r, f1) in per_doc.items():
                assert 0 < p <= 1 and 0 < r <= 1
                assert f1 <= max(p, r) + 1e-12

    def test_mismatched_ids_rejected(self):
        with pytest.raises(ValueError):
            bcubed({"a": "x"}, {"b": "x"})

    def test_report_mean_bounds(self):
        rng = np.random.default_rng(3)
        ids = [f"d{i}" for i in range(50)]
        system = {d: f"s{rng.integers(0, 5)}" for d in ids}
        gold = {d: f"g{rng.integers(0, 5)}" for d in ids}
        _, report = bcubed(system, gold)
        for stats in report.rows.values():
            assert stats.min <= stats.mean <= stats.max
            assert stats.dev >= 0


class TestPrecisionAtK:
    def test_all_relevant(self):
        rankings = {"q": ["a", "b", "c"]}
        relevant = {"q": {"a", "b", "c", "z"}}
        assert precision_at_k(rankings, relevant, 3).rows["p@3"].mean == 1.0

    def test_none_relevant(self):
        rankings = {"q": ["a", "b", "c"]}
        report = precision_at_k(rankings, {"q": set()}, 3)
        assert report.rows["p@3"].mean == 0.0

    def test_short_rankings_padded(self):
        rankings = {"q": ["a"]}
        report = precision_at_k(rankings, {"q": {"a"}}, 5)
        assert report.rows["p@5"].mean == pytest.approx(1 / 5)

    def test_ten_handbuilt_queries_mean_and_dev(self):
        # hits in the top 3 per query, laid out by hand
        hits = [3, 2, 2, 1, 0, 3, 1, 2, 0, 3]
        rankings = {}
        relevant = {}
        for q, h in enumerate(hits):
            docs = [f"q{q}r{i}" if i < h else f"q{q}x{i}" for i in range(3)]
            rankings[f"q{q}"] = docs
            relevant[f"q{q}"] = {f"q{q}r{i}" for i in range(3)}
        report = precision_at_k(rankings, relevant, 3)
        scores = [h / 3 for h in hits]
        mean = sum(scores) / len(scores)
        dev = math.sqrt(sum((s - mean) ** 2 for s in scores) / len(scores))
        assert report.rows["p@3"].mean == pytest.approx(mean)
        assert report.rows["p@3"].dev == pytest.approx(dev)
        assert report.rows["p@3"].min == 0.0
        assert report.rows["p@3"].max == 1.0

    def test_monotone_on_prefix_relevant_fixture(self):
        # every query ranks its relevant docs first: precision@k can
        # only decay as k grows past the relevant prefix
        rankings = {}
        relevant = {}
        for q in range(6):
            rel = [f"q{q}r{i}" for i in range(4)]
            rankings[f"q{q}"] = rel + [f"q{q}x{i}" for i in range(10)]
            relevant[f"q{q}"] = set(rel)
        report = retrieval_report(rankings, relevant, ks=(3, 5, 10))
        assert (report.rows["p@3"].mean >= report.rows["p@5"].mean
                >= report.rows["p@10"].mean)

    def test_k_validated(self):
        with pytest.raises(ValueError):
            precision_at_k({}, {}, 0)


class TestBuildGroundTruth:
    def test_shared_label_mutually_relevant(self):
        docs = [
            Document("a", "en", "x", frozenset({"A"})),
            Document("b", "en", "x", frozenset({"A", "B"})),
        ]
        gold, relevant = build_ground_truth(docs)
        assert relevant["a"] == {"b"} and relevant["b"] == {"a"}

    def test_gold_keys_differ_on_label_sets(self):
        docs = [
            Document("a", "en", "x", frozenset({"A"})),
            Document("b", "en", "x", frozenset({"A", "B"})),
        ]
        gold, _ = build_ground_truth(docs)
        assert gold["a"] != gold["b"]
        assert gold["b"] == "A|B"

    def test_unlabeled_excluded_with_warning(self, caplog):
        docs = [
            Document("a", "en", "x", frozenset({"A"})),
            Document("nolabel", "en", "x"),
        ]
        with caplog.at_level("WARNING"):
            gold, relevant = build_ground_truth(docs)
        assert "nolabel" not in gold and "nolabel" not in relevant
        assert any("unlabeled" in r.message for r in caplog.records)

    def test_self_never_relevant(self):
        docs = [Document("solo", "en", "x", frozenset({"A"}))]
        _, relevant = build_ground_truth(docs)
        assert relevant["solo"] == set()


class TestOverlapClusters:
    def test_chain_joins_transitively(self):
        members = {"a": {"x"}, "b": {"x", "y"}, "c": {"y"}, "d": {"z"}}
        clusters = overlap_clusters(members)
        assert clusters["a"] == clusters["b"] == clusters["c"]
        assert clusters["d"] != clusters["a"]

    def test_empty_sets_stay_singletons(self):
        clusters = overlap_clusters({"a": set(), "b": set()})
        assert clusters["a"] != clusters["b"]

    def test_stricter_than_exact_keys(self):
        # exact-key clustering splits {A} from {A,B}; overlap joins them
        members = {"a": {"A"}, "b": {"A", "B"}}
        exact = {"a": "A", "b": "A|B"}
        overlap = overlap_clusters(members)
        assert exact["a"] != exact["b"]
        assert overlap["a"] == overlap["b"]


class TestEvalReport:
    def test_tsv_shape(self):
        report = EvalReport({"p@3": MetricStats(0.0, 1.0, 0.5, 0.1)})
        lines = report.to_tsv().strip().split("\n")
        assert lines[0] == "metric\tmin\tmax\tmean\tdev"
        assert lines[1].startswith("p@3\t0.000000\t1.000000\t0.500000")

    def test_json_roundtrip(self):
        import json
        report = EvalReport({"f1": MetricStats(0.1, 0.9, 0.4, 0.2)})
        obj = json.loads(report.to_json())
        assert obj["f1"]["mean"] == 0.4

    def test_stats_invariants_enforced(self):
        with pytest.raises(ValueError):
            MetricStats(0.5, 1.0, 0.4, 0.1)
        with pytest.raises(ValueError):
            MetricStats(0.0, 1.0, 0.5, -0.1)
