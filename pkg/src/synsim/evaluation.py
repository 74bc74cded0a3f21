"""Clustering and retrieval metrics with summary reports.

Classification quality is scored per document against gold clusters:
for document i, with CL_i the documents sharing its system cluster and
G_i the documents sharing its gold cluster,

    precision_i = |CL_i & G_i| / |CL_i|
    recall_i    = |CL_i & G_i| / |G_i|

and the collection scores are plain averages over documents. Retrieval
quality is precision@k over ranked result lists. Reports carry
min/max/mean/dev rows per metric and serialize to TSV and JSON.
"""

import json
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .corpus import Document

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetricStats:
    min: float
    max: float
    mean: float
    dev: float

    def __post_init__(self):
        if not (self.min <= self.mean <= self.max):
            raise ValueError("need min <= mean <= max")
        if self.dev < 0:
            raise ValueError("dev must be >= 0")


@dataclass
class EvalReport:
    """Named metric rows, each summarized as min/max/mean/dev."""

    rows: dict[str, MetricStats]

    def to_tsv(self) -> str:
        lines = ["metric\tmin\tmax\tmean\tdev"]
        for name, s in self.rows.items():
            lines.append(f"{name}\t{s.min:.6f}\t{s.max:.6f}\t{s.mean:.6f}\t{s.dev:.6f}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        obj = {
            name: {"min": s.min, "max": s.max, "mean": s.mean, "dev": s.dev}
            for name, s in self.rows.items()
        }
        return json.dumps(obj, sort_keys=True, ensure_ascii=False)

    def merged(self, other: "EvalReport") -> "EvalReport":
        rows = dict(self.rows)
        rows.update(other.rows)
        return EvalReport(rows)


def _stats(values: Sequence[float]) -> MetricStats:
    n = len(values)
    if n == 0:
        raise ValueError("cannot summarize an empty metric")
    mean = sum(values) / n
    # population deviation: every evaluated document/query counts
    dev = math.sqrt(sum((v - mean) ** 2 for v in values) / n)
    lo, hi = min(values), max(values)
    return MetricStats(lo, hi, min(max(mean, lo), hi), dev)


def bcubed(
    system: Mapping[str, str], gold: Mapping[str, str]
) -> tuple[dict[str, tuple[float, float, float]], EvalReport]:
    """Per-document precision/recall/F1 of a clustering, plus the summary.

    ``system`` and ``gold`` map the same document ids to cluster keys.
    F1 of a document is the harmonic mean of its precision and recall
    (0 when both are 0).
    """
    if set(system) != set(gold):
        raise ValueError("system and gold must cover the same document ids")
    sys_members: dict[str, set[str]] = {}
    gold_members: dict[str, set[str]] = {}
    for doc, key in system.items():
        sys_members.setdefault(key, set()).add(doc)
    for doc, key in gold.items():
        gold_members.setdefault(key, set()).add(doc)

    overlap: dict[tuple[str, str], int] = {}
    per_doc: dict[str, tuple[float, float, float]] = {}
    for doc in system:
        skey, gkey = system[doc], gold[doc]
        pair = (skey, gkey)
        inter = overlap.get(pair)
        if inter is None:
            inter = len(sys_members[skey] & gold_members[gkey])
            overlap[pair] = inter
        p = inter / len(sys_members[skey])
        r = inter / len(gold_members[gkey])
        f1 = 0.0 if p + r == 0 else 2 * p * r / (p + r)
        per_doc[doc] = (p, r, f1)

    report = EvalReport(
        {
            "precision": _stats([v[0] for v in per_doc.values()]),
            "recall": _stats([v[1] for v in per_doc.values()]),
            "f1": _stats([v[2] for v in per_doc.values()]),
        }
    )
    return per_doc, report


def precision_at_k(
    rankings: Mapping[str, Sequence[str]],
    relevant: Mapping[str, Iterable[str]],
    k: int,
) -> EvalReport:
    """Fraction of the top-k ranked documents that are relevant, per query.

    Rankings shorter than k are treated as padded with non-relevant
    entries (the denominator stays k). Returns a one-row report named
    ``p@k`` summarizing over queries.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    scores = []
    for query, ranking in rankings.items():
        rel = set(relevant.get(query, ()))
        hits = sum(1 for doc in ranking[:k] if doc in rel)
        scores.append(hits / k)
    return EvalReport({f"p@{k}": _stats(scores)})


def retrieval_report(
    rankings: Mapping[str, Sequence[str]],
    relevant: Mapping[str, Iterable[str]],
    ks: Iterable[int] = (3, 5, 10),
) -> EvalReport:
    """precision@k rows for several cutoffs in one report."""
    report = EvalReport({})
    for k in ks:
        report = report.merged(precision_at_k(rankings, relevant, k))
    return report


def overlap_clusters(members: Mapping[str, Iterable[str]]) -> dict[str, str]:
    """Cluster ids by any-overlap linkage over their element sets.

    Two ids land in the same cluster when their sets share an element,
    directly or through a chain (connected components). This is the
    softer alternative to exact-set-equality cluster keys, for both
    gold label sets and level-0 synset sets; ids with empty sets each
    form their own singleton cluster.
    """
    by_element: dict[str, list[str]] = {}
    for key, elements in members.items():
        for element in elements:
            by_element.setdefault(element, []).append(key)

    parent: dict[str, str] = {key: key for key in members}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for keys in by_element.values():
        root = find(keys[0])
        for other in keys[1:]:
            parent[find(other)] = root

    # canonical representative: smallest id in the component
    rep: dict[str, str] = {}
    for key in members:
        root = find(key)
        if root not in rep or key < rep[root]:
            rep[root] = key
    return {key: rep[find(key)] for key in members}


def build_ground_truth(
    docs: Iterable[Document],
) -> tuple[dict[str, str], dict[str, set[str]]]:
    """Gold cluster keys and per-document relevant sets from labels.

    The gold cluster key is the canonical sorted label set; two
    documents are mutually relevant for retrieval when they share at
    least one label. Unlabeled documents are excluded with a warning.
    """
    labeled = []
    skipped = 0
    for doc in docs:
        if doc.labels:
            labeled.append(doc)
        else:
            skipped += 1
    if skipped:
        log.warning("excluding %d unlabeled documents from evaluation", skipped)

    gold_keys = {d.id: "|".join(sorted(d.labels)) for d in labeled}

    by_label: dict[str, set[str]] = {}
    for d in labeled:
        for label in d.labels:
            by_label.setdefault(label, set()).add(d.id)
    relevant: dict[str, set[str]] = {}
    for d in labeled:
        rel: set[str] = set()
        for label in d.labels:
            rel |= by_label[label]
        rel.discard(d.id)
        relevant[d.id] = rel
    return gold_keys, relevant
