"""Scoring clusterings and rankings: per-item B-Cubed and precision@k.

Small worked examples with numbers you can check by hand, plus the
ground-truth construction from labeled documents.
"""

from synsim import (
    Document,
    bcubed,
    build_ground_truth,
    precision_at_k,
    retrieval_report,
)


def main():
    print("B-Cubed on a deliberately coarse clustering:")
    gold = {f"d{i}": ("left" if i < 4 else "right") for i in range(8)}
    system = {f"d{i}": "everything" for i in range(8)}
    per_doc, report = bcubed(system, gold)
    print("  every document: precision", per_doc["d0"][0],
          "recall", per_doc["d0"][1])
    print("  summary:", {k: round(v.mean, 3) for k, v in report.rows.items()})

    print("\nB-Cubed rewards splitting when gold is split:")
    per_doc, report = bcubed(gold, gold)  # system == gold
    print("  perfect clustering means:",
          {k: v.mean for k, v in report.rows.items()})

    print("\nprecision@k over three hand-made queries:")
    rankings = {
        "q1": ["r1", "r2", "x1", "r3", "x2"],   # 2 of top 3 relevant
        "q2": ["x1", "x2", "x3", "r1", "r2"],   # 0 of top 3
        "q3": ["r1", "r2", "r3", "r4", "x1"],   # 3 of top 3
    }
    relevant = {
        "q1": {"r1", "r2", "r3"},
        "q2": {"r1", "r2"},
        "q3": {"r1", "r2", "r3", "r4"},
    }
    report = retrieval_report(rankings, relevant, ks=(3, 5))
    for name, stats in report.rows.items():
        print(f"  {name}: mean={stats.mean:.3f} dev={stats.dev:.3f}")
    single = precision_at_k(rankings, relevant, 3)
    print("  p@3 alone:", round(single.rows["p@3"].mean, 3), "(= (2/3 + 0 + 1)/3)")

    print("\nground truth from labeled documents:")
    docs = [
        Document("a", "en", "...", frozenset({"energy"})),
        Document("b", "en", "...", frozenset({"energy", "trade"})),
        Document("c", "en", "...", frozenset({"health"})),
        Document("d", "en", "..."),  # unlabeled: excluded with a warning
    ]
    gold_keys, relevant_sets = build_ground_truth(docs)
    print("  gold cluster keys:", gold_keys)
    print("  retrieval relevance ('share a label'):",
          {k: sorted(v) for k, v in relevant_sets.items()})

    print("\nreport as TSV:")
    print("\n".join("  " + line for line in report.to_tsv().strip().split("\n")))


if __name__ == "__main__":
    main()
