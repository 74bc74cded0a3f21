"""Driving the full pipeline through the command-line interface.

Generates a bilingual toy workspace (corpora, lexicons, taxonomy and a
config file), then runs every subcommand in order: ingest, train,
annotate, hash, index, query and both evaluations. The same commands
work from a shell via the installed `synsim` entry point.
"""

import json
import string
import tempfile
from pathlib import Path

import numpy as np

from synsim.cli import main
from synsim.rng import substream

N_CONCEPTS = 6
WORDS = 8
DOCS = 48
HELD_OUT = 18
TOKENS = 40
LETTERS = string.ascii_lowercase


def make_docs(lang, n, seed, prefix=""):
    rng = substream(seed, f"cli-demo:{lang}:{prefix}")
    weights = np.arange(WORDS, 0, -1, dtype=float)
    weights /= weights.sum()
    rows = []
    for d in range(n):
        dom = d % N_CONCEPTS
        theta = np.full(N_CONCEPTS, 0.3 / (N_CONCEPTS - 1))
        theta[dom] = 0.7
        cs = rng.choice(N_CONCEPTS, size=TOKENS, p=theta)
        ws = rng.choice(WORDS, size=TOKENS, p=weights)
        text = " ".join(f"{lang}c{LETTERS[c]}w{LETTERS[w]}" for c, w in zip(cs, ws))
        rows.append({"id": f"{prefix}{lang}{d:03d}", "lang": lang,
                     "text": text, "labels": [f"C{dom}"]})
    return rows


def write_workspace(root: Path) -> str:
    lines = [
        "languages = xx,yy",
        f"workdir = {root / 'run'}",
        "k = 6", "iterations = 150", "seed = 21",
        "infer_iterations = 40", "infer_burn_in = 20",
        "eval_sample = 36", "eval_queries = 10",
        f"taxonomy = {root / 'tax.tsv'}",
    ]
    (root / "tax.tsv").write_text(
        "".join(f"C{c}\troot{c}\n" for c in range(N_CONCEPTS)), encoding="utf-8")
    for lang in ("xx", "yy"):
        for name, rows in (
            (f"train.{lang}.jsonl", make_docs(lang, DOCS, seed=1)),
            (f"eval.{lang}.jsonl", make_docs(lang, HELD_OUT, seed=2, prefix="ho-")),
        ):
            (root / name).write_text(
                "".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")
        lex = "".join(
            f"S{c:02d}\t{lang}c{LETTERS[c]}w{LETTERS[w]}\n"
            for c in range(N_CONCEPTS) for w in range(WORDS))
        (root / f"lex.{lang}.tsv").write_text(lex, encoding="utf-8")
        lines += [
            f"corpus.{lang} = {root / f'train.{lang}.jsonl'}",
            f"eval_corpus.{lang} = {root / f'eval.{lang}.jsonl'}",
            f"lexicon.{lang} = {root / f'lex.{lang}.tsv'}",
        ]
    cfg = root / "run.conf"
    cfg.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(cfg)


def run(args):
    print(f"\n$ synsim {' '.join(args)}")
    code = main(args)
    assert code == 0, f"exit code {code}"


def main_demo():
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        cfg = write_workspace(root)
        print(f"workspace under {root}")
        print(Path(cfg).read_text())

        run(["ingest", "--config", cfg])
        run(["train", "--config", cfg])
        run(["train", "--config", cfg, "--labeled"])
        run(["annotate", "--config", cfg])
        run(["hash", "--config", cfg])
        run(["index", "--config", cfg])

        query_text = json.loads(
            (root / "train.xx.jsonl").read_text().splitlines()[0])["text"]
        run(["query", "--config", cfg, "--lang", "xx", "--k", "5",
             "--text", query_text])

        run(["evaluate", "--config", cfg, "--task", "classification",
             "--mode", "syn"])
        run(["evaluate", "--config", cfg, "--task", "classification",
             "--mode", "cat"])
        run(["evaluate", "--config", cfg, "--task", "ir", "--mode", "syn"])

        print("\nartifacts in the workdir:")
        for path in sorted((root / "run").iterdir()):
            print(f"  {path.name}")


if __name__ == "__main__":
    main_demo()
