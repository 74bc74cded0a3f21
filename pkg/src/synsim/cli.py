"""Command-line pipeline driver.

Subcommands wire the stages end to end: ``ingest`` materializes cleaned
corpora, ``train`` fits per-language topic models (optionally the
supervised label-topic variant), ``annotate`` attaches synset sets to
topics, ``hash`` converts documents to hierarchical hash codes,
``index`` builds the similarity index, ``query`` runs ad-hoc searches
and ``evaluate`` scores classification and retrieval against labeled
held-out data. Every command is reproducible from its config plus seed.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import RunConfig, load_config
from .corpus import (
    Document,
    FallbackLemmatizer,
    filter_short,
    ingest_corpus,
    load_lemma_file,
    serialize_corpus,
    tokenize,
    tokenize_corpus,
)
from .evaluation import EvalReport, bcubed, build_ground_truth, retrieval_report
from .hashing import HashCode, build_topic_hash, hash_from_dict, hash_to_dict, to_synset_hash
from .lexicon import (
    TopicAnnotation,
    annotate_all,
    load_annotations,
    load_lexicon,
    save_annotations,
)
from .rng import derive_seed, substream
from .search import SimilarityIndex, cluster_key
from .taxonomy import load_taxonomy, reduce_to_roots
from .topics import TopicModel, infer, load_model, save_model, train_labeled_lda, train_lda
from .vocabulary import build_vocabulary, to_bow

MANIFEST_FORMAT = "synsim-manifest/1"
HASHES_FORMAT = "synsim-hashes/1"


def _workdir(cfg: RunConfig) -> Path:
    path = Path(cfg.workdir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _select_langs(cfg: RunConfig, lang_arg: str | None) -> list[str]:
    if not lang_arg:
        return list(cfg.languages)
    langs = [x.strip() for x in lang_arg.split(",") if x.strip()]
    for lang in langs:
        if lang not in cfg.languages:
            raise ValueError(f"unknown language {lang!r}; configured: {cfg.languages}")
    return langs


def _clean_corpus_path(cfg: RunConfig, lang: str) -> Path:
    return _workdir(cfg) / f"corpus.{lang}.jsonl"


def _ensure_ingested(cfg: RunConfig, lang: str) -> list[Document]:
    """Load the cleaned corpus, materializing it from the raw file if needed."""
    clean = _clean_corpus_path(cfg, lang)
    if clean.exists():
        return ingest_corpus(clean, lang)
    raw = cfg.corpus.get(lang)
    if raw is None:
        raise ValueError(f"no corpus configured for language {lang!r}")
    docs = filter_short(ingest_corpus(raw, lang), cfg.min_chars)
    serialize_corpus(docs, clean)
    return docs


def _tokenized(cfg: RunConfig, docs: list[Document], lang: str) -> dict[str, list[str]]:
    overrides = None
    if lang in cfg.lemmas:
        overrides = load_lemma_file(cfg.lemmas[lang])
    return tokenize_corpus(docs, FallbackLemmatizer(), overrides)


def _model_path(cfg: RunConfig, lang: str, labeled: bool) -> Path:
    stem = "model-labeled" if labeled else "model"
    return _workdir(cfg) / f"{stem}.{lang}.json"


def _manifest_path(cfg: RunConfig, labeled: bool) -> Path:
    return _workdir(cfg) / ("manifest-labeled.json" if labeled else "manifest.json")


def cmd_ingest(cfg: RunConfig, langs: list[str]) -> None:
    for lang in langs:
        raw = cfg.corpus.get(lang)
        if raw is None:
            raise ValueError(f"no corpus configured for language {lang!r}")
        docs = ingest_corpus(raw, lang)
        kept = filter_short(docs, cfg.min_chars)
        serialize_corpus(kept, _clean_corpus_path(cfg, lang))
        print(f"{lang}: {len(docs)} documents read, {len(kept)} kept "
              f"(>= {cfg.min_chars} chars)")


def cmd_train(cfg: RunConfig, langs: list[str], labeled: bool) -> None:
    # fail on any missing input before the first (possibly long) training run
    for lang in langs:
        if not _clean_corpus_path(cfg, lang).exists():
            raw = cfg.corpus.get(lang)
            if raw is None:
                raise ValueError(f"no corpus configured for language {lang!r}")
            if not Path(raw).exists():
                raise ValueError(f"corpus file not found: {raw}")
    universe: list[str] | None = None
    tax = None
    if labeled:
        if not cfg.taxonomy:
            raise ValueError("supervised training needs a 'taxonomy' config entry")
        tax = load_taxonomy(cfg.taxonomy)
        universe = sorted(tax.roots)

    models: dict[str, str] = {}
    trained_ids: dict[str, list[str]] = {}
    for lang in langs:
        docs = _ensure_ingested(cfg, lang)
        tokens = _tokenized(cfg, docs, lang)
        vocab = build_vocabulary([tokens[d.id] for d in docs], cfg.max_df, cfg.min_df)
        bows = [to_bow(tokens[d.id], vocab) for d in docs]
        seed = derive_seed(cfg.seed, f"train:{'labeled' if labeled else 'lda'}:{lang}")
        if labeled:
            doc_labels = [
                reduce_to_roots(tax, d.labels) if d.labels else set() for d in docs
            ]
            model = train_labeled_lda(
                bows, doc_labels, universe, vocab,
                cfg.alpha, cfg.beta, cfg.iterations, seed, lang,
            )
        else:
            model = train_lda(
                bows, vocab, cfg.k,
                cfg.alpha, cfg.beta, cfg.iterations, seed, lang,
            )
        path = _model_path(cfg, lang, labeled)
        save_model(model, path)
        models[lang] = path.name
        trained_ids[lang] = [d.id for d in docs]
        print(f"{lang}: trained K={model.K} on {len(docs)} documents "
              f"({len(vocab)} terms) -> {path.name}")

    manifest = {
        "format": MANIFEST_FORMAT,
        "command": "train",
        "labeled": labeled,
        "config": cfg.resolved(),
        "config_sha256": cfg.sha256(),
        "seed": cfg.seed,
        "models": models,
        "trained_ids": trained_ids,
    }
    mpath = _manifest_path(cfg, labeled)
    with open(mpath, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, ensure_ascii=False, sort_keys=True)
        fh.write("\n")
    print(f"manifest -> {mpath.name}")


def cmd_annotate(cfg: RunConfig, langs: list[str]) -> None:
    for lang in langs:
        lexpath = cfg.lexicon.get(lang)
        if lexpath is None:
            raise ValueError(f"no lexicon configured for language {lang!r}")
        model = load_model(_model_path(cfg, lang, labeled=False))
        lexicon = load_lexicon(lexpath, lang)
        annotations = annotate_all(model, lexicon, cfg.topn)
        out = _workdir(cfg) / f"annotations.{lang}.json"
        save_annotations(annotations, lang, out)
        n_empty = sum(1 for a in annotations.values() if not a.synsets)
        print(f"{lang}: annotated {model.K} topics "
              f"({n_empty} without synsets) -> {out.name}")


def _doc_synset_hash(
    cfg: RunConfig,
    model: TopicModel,
    annotations: dict[int, TopicAnnotation],
    bow: dict[int, int],
    infer_seed: int,
) -> tuple[HashCode, HashCode]:
    theta = infer(model, bow, cfg.infer_iterations, cfg.infer_burn_in, infer_seed)
    topic_hash = build_topic_hash(theta, cfg.levels, cfg.cap)
    return topic_hash, to_synset_hash(topic_hash, annotations)


def cmd_hash(cfg: RunConfig, langs: list[str]) -> None:
    for lang in langs:
        model = load_model(_model_path(cfg, lang, labeled=False))
        annotations = load_annotations(_workdir(cfg) / f"annotations.{lang}.json")
        docs = _ensure_ingested(cfg, lang)
        tokens = _tokenized(cfg, docs, lang)
        out = _workdir(cfg) / f"hashes.{lang}.jsonl"
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps({"format": HASHES_FORMAT, "lang": lang},
                                sort_keys=True) + "\n")
            for doc in docs:
                bow = to_bow(tokens[doc.id], model.vocab)
                topic_hash, synset_hash = _doc_synset_hash(
                    cfg, model, annotations, bow,
                    derive_seed(cfg.seed, f"infer:{lang}:{doc.id}"),
                )
                fh.write(json.dumps(
                    {"id": doc.id, "lang": lang,
                     "topic": hash_to_dict(topic_hash),
                     "synset": hash_to_dict(synset_hash)},
                    ensure_ascii=False, sort_keys=True) + "\n")
        print(f"{lang}: hashed {len(docs)} documents -> {out.name}")


def _read_hashes(path: Path) -> list[tuple[str, str, HashCode]]:
    entries = []
    with open(path, encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        if header.get("format") != HASHES_FORMAT:
            raise ValueError(f"{path}: unsupported hashes format {header.get('format')!r}")
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            entries.append((obj["id"], obj["lang"], hash_from_dict(obj["synset"])))
    return entries


def cmd_index(cfg: RunConfig, langs: list[str]) -> None:
    index = SimilarityIndex(cfg.levels)
    for lang in langs:
        for doc_id, doc_lang, code in _read_hashes(_workdir(cfg) / f"hashes.{lang}.jsonl"):
            index.add(doc_id, code, doc_lang)
    out = _workdir(cfg) / "index.json"
    index.save(out)
    print(f"indexed {len(index)} documents -> {out.name}")


def cmd_query(cfg: RunConfig, text: str, lang: str, k: int) -> None:
    if lang not in cfg.languages:
        raise ValueError(f"unknown language {lang!r}; configured: {cfg.languages}")
    model = load_model(_model_path(cfg, lang, labeled=False))
    annotations = load_annotations(_workdir(cfg) / f"annotations.{lang}.json")
    index = SimilarityIndex.load(_workdir(cfg) / "index.json")
    bow = to_bow(tokenize(text, lang, FallbackLemmatizer()), model.vocab)
    _, probe = _doc_synset_hash(
        cfg, model, annotations, bow, derive_seed(cfg.seed, "query")
    )
    for rank, (doc_id, dist) in enumerate(index.query(probe, k), start=1):
        print(f"{rank}\t{doc_id}\t{dist:.6f}\t{index.langs.get(doc_id) or '?'}")


def _label_annotations(model: TopicModel) -> dict[int, TopicAnnotation]:
    """Each label topic annotates itself: the category-based hash space."""
    if model.topic_labels is None:
        raise ValueError("category mode needs a supervised (labeled) model")
    return {
        k: TopicAnnotation(k, frozenset({label}))
        for k, label in enumerate(model.topic_labels)
    }


def _write_report(report: EvalReport, base: Path) -> None:
    # the base name contains dots, so extensions are appended, not swapped
    base.parent.joinpath(base.name + ".tsv").write_text(
        report.to_tsv(), encoding="utf-8")
    base.parent.joinpath(base.name + ".json").write_text(
        report.to_json() + "\n", encoding="utf-8")


def cmd_evaluate(cfg: RunConfig, task: str, mode: str, langs: list[str]) -> None:
    labeled_models = mode == "cat"
    manifest_path = _manifest_path(cfg, labeled_models)
    if not manifest_path.exists():
        raise ValueError(f"missing manifest {manifest_path.name}; run train first")
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    if manifest.get("format") != MANIFEST_FORMAT:
        raise ValueError(f"unsupported manifest format {manifest.get('format')!r}")

    models: dict[str, TopicModel] = {}
    annotations: dict[str, dict[int, TopicAnnotation]] = {}
    eval_docs: list[Document] = []
    for lang in langs:
        models[lang] = load_model(_model_path(cfg, lang, labeled_models))
        if mode == "syn":
            annotations[lang] = load_annotations(
                _workdir(cfg) / f"annotations.{lang}.json"
            )
        else:
            annotations[lang] = _label_annotations(models[lang])
        path = cfg.eval_corpus.get(lang)
        if path is None:
            raise ValueError(f"no eval_corpus configured for language {lang!r}")
        docs = filter_short(ingest_corpus(path, lang), cfg.min_chars)
        trained = set(manifest["trained_ids"].get(lang, ()))
        overlap = {d.id for d in docs} & trained
        if overlap:
            raise ValueError(
                f"{len(overlap)} held-out documents were used in training "
                f"(e.g. {sorted(overlap)[:3]})"
            )
        eval_docs.extend(docs)

    rng = substream(cfg.seed, "eval-sample")
    if len(eval_docs) > cfg.eval_sample:
        picked = rng.choice(len(eval_docs), size=cfg.eval_sample, replace=False)
        eval_docs = [eval_docs[i] for i in sorted(picked)]

    gold_keys, relevant = build_ground_truth(eval_docs)
    eval_docs = [d for d in eval_docs if d.id in gold_keys]
    if not eval_docs:
        raise ValueError("no labeled held-out documents to evaluate on")

    tokens_by_lang = {
        lang: _tokenized(cfg, [d for d in eval_docs if d.lang == lang], lang)
        for lang in langs
    }
    hashes: dict[str, HashCode] = {}
    for doc in eval_docs:
        model = models[doc.lang]
        bow = to_bow(tokens_by_lang[doc.lang][doc.id], model.vocab)
        _, code = _doc_synset_hash(
            cfg, model, annotations[doc.lang], bow,
            derive_seed(cfg.seed, f"eval-infer:{doc.id}"),
        )
        hashes[doc.id] = code

    tag = "-".join(langs)
    if task == "classification":
        system = {doc_id: cluster_key(code) for doc_id, code in hashes.items()}
        _, report = bcubed(system, gold_keys)
        base = _workdir(cfg) / f"eval.classification.{mode}.{tag}"
    else:
        index = SimilarityIndex(cfg.levels)
        lang_of = {d.id: d.lang for d in eval_docs}
        for doc_id, code in hashes.items():
            index.add(doc_id, code, lang_of[doc_id])
        qrng = substream(cfg.seed, "eval-queries")
        ids = [d.id for d in eval_docs]
        n_queries = min(cfg.eval_queries, len(ids))
        picked = qrng.choice(len(ids), size=n_queries, replace=False)
        rankings = {}
        for i in picked:
            qid = ids[i]
            ranked = [doc for doc, _ in index.query(hashes[qid], len(index))
                      if doc != qid]
            rankings[qid] = ranked
        report = retrieval_report(rankings, relevant, ks=(3, 5, 10))
        base = _workdir(cfg) / f"eval.ir.{mode}.{tag}"

    _write_report(report, base)
    print(f"evaluated {len(eval_docs)} documents ({task}, {mode}, {tag})")
    for name, stats in report.rows.items():
        print(f"  {name}: mean={stats.mean:.4f} dev={stats.dev:.4f} "
              f"min={stats.min:.4f} max={stats.max:.4f}")
    print(f"report -> {base.name}.tsv / .json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synsim",
        description="cross-lingual document similarity pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, help="path to the run config file")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--lang", help="restrict to these comma-separated languages")
        return p

    add("ingest", "validate and clean the configured corpora")
    p = add("train", "train per-language topic models")
    p.add_argument("--labeled", action="store_true",
                   help="train the supervised label-topic variant")
    add("annotate", "annotate topics with synsets from the lexicons")
    add("hash", "compute hierarchical hash codes for all documents")
    add("index", "build the similarity index from hash codes")
    p = add("query", "search the index with an ad-hoc text")
    p.add_argument("--text", required=True, help="query text")
    p.add_argument("--k", type=int, default=10, help="number of results")
    p = add("evaluate", "score classification or retrieval on held-out data")
    p.add_argument("--task", choices=("classification", "ir"), required=True)
    p.add_argument("--mode", choices=("cat", "syn"), required=True)
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    langs = _select_langs(cfg, args.lang)

    if args.command == "ingest":
        cmd_ingest(cfg, langs)
    elif args.command == "train":
        cmd_train(cfg, langs, args.labeled)
    elif args.command == "annotate":
        cmd_annotate(cfg, langs)
    elif args.command == "hash":
        cmd_hash(cfg, langs)
    elif args.command == "index":
        cmd_index(cfg, langs)
    elif args.command == "query":
        if not args.lang or "," in args.lang:
            raise ValueError("query needs exactly one --lang")
        cmd_query(cfg, args.text, langs[0], args.k)
    elif args.command == "evaluate":
        cmd_evaluate(cfg, args.task, args.mode, langs)
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    try:
        return run(argv)
    except BrokenPipeError:
        return 1
    except Exception as exc:  # one-line machine-parsable failure
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
