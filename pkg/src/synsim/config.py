"""Run configuration: flat key=value files with typed accessors.

A config file is plain text, one ``key = value`` per line, '#' for
comments. Per-language keys use a dotted suffix (``corpus.en``). Every
random choice of a run flows from the single ``seed`` through named
substreams, so a config plus its seed pins all outputs.

Recognized keys (defaults in parentheses):

    languages            comma-separated language codes (required)
    corpus.<lang>        training corpus JSONL per language (required)
    eval_corpus.<lang>   held-out labeled corpus JSONL per language
    lexicon.<lang>       synset lexicon TSV per language
    lemmas.<lang>        precomputed lemma JSONL per language
    taxonomy             broader-than TSV for supervised training
    workdir              output directory (run)
    k (500)              topic count
    alpha (0.1)          document-topic Dirichlet prior
    beta (0.01)          topic-word Dirichlet prior
    iterations (1000)    training sweeps
    seed (0)             master seed
    topn (5)             top words per topic used for annotation
    levels (3)           hash hierarchy depth
    cap (12)             topics considered before level grouping
    max_df (0.9)         stopword document-frequency ceiling
    min_df (0.005)       rare-term document-frequency floor
    min_chars (100)      minimum document length in characters
    infer_iterations (100)  fold-in sweeps
    infer_burn_in (50)      fold-in burn-in sweeps
    eval_sample (1000)   held-out documents drawn for evaluation
    eval_queries (100)   retrieval queries drawn from the sample
"""

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

_SCALAR_KEYS = {
    "languages", "taxonomy", "workdir", "k", "alpha", "beta", "iterations",
    "seed", "topn", "levels", "cap", "max_df", "min_df", "min_chars",
    "infer_iterations", "infer_burn_in", "eval_sample", "eval_queries",
}
_LANG_KEYS = {"corpus", "eval_corpus", "lexicon", "lemmas"}


@dataclass
class RunConfig:
    languages: list[str]
    corpus: dict[str, str] = field(default_factory=dict)
    eval_corpus: dict[str, str] = field(default_factory=dict)
    lexicon: dict[str, str] = field(default_factory=dict)
    lemmas: dict[str, str] = field(default_factory=dict)
    taxonomy: str | None = None
    workdir: str = "run"
    k: int = 500
    alpha: float = 0.1
    beta: float = 0.01
    iterations: int = 1000
    seed: int = 0
    topn: int = 5
    levels: int = 3
    cap: int = 12
    max_df: float = 0.90
    min_df: float = 0.005
    min_chars: int = 100
    infer_iterations: int = 100
    infer_burn_in: int = 50
    eval_sample: int = 1000
    eval_queries: int = 100

    def __post_init__(self):
        if not self.languages:
            raise ValueError("config needs at least one language")
        if len(set(self.languages)) != len(self.languages):
            raise ValueError("languages must not repeat")

    def resolved(self) -> dict[str, str]:
        """Canonical flat mapping of the effective configuration."""
        out: dict[str, str] = {
            "languages": ",".join(self.languages),
            "workdir": self.workdir,
            "k": str(self.k),
            "alpha": repr(self.alpha),
            "beta": repr(self.beta),
            "iterations": str(self.iterations),
            "seed": str(self.seed),
            "topn": str(self.topn),
            "levels": str(self.levels),
            "cap": str(self.cap),
            "max_df": repr(self.max_df),
            "min_df": repr(self.min_df),
            "min_chars": str(self.min_chars),
            "infer_iterations": str(self.infer_iterations),
            "infer_burn_in": str(self.infer_burn_in),
            "eval_sample": str(self.eval_sample),
            "eval_queries": str(self.eval_queries),
        }
        if self.taxonomy:
            out["taxonomy"] = self.taxonomy
        for name, table in (
            ("corpus", self.corpus),
            ("eval_corpus", self.eval_corpus),
            ("lexicon", self.lexicon),
            ("lemmas", self.lemmas),
        ):
            for lang, path in table.items():
                out[f"{name}.{lang}"] = path
        return out

    def sha256(self) -> str:
        canon = "".join(f"{k}={v}\n" for k, v in sorted(self.resolved().items()))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    """Parse the flat key=value format into a raw string mapping."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"{source}:{lineno}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ValueError(f"{source}:{lineno}: empty key")
        if key in raw:
            raise ValueError(f"{source}:{lineno}: duplicate key {key!r}")
        raw[key] = value
    return raw


def _check_keys(raw: dict[str, str], source: str) -> None:
    for key in raw:
        base, _, suffix = key.partition(".")
        if suffix:
            if base not in _LANG_KEYS:
                raise ValueError(f"{source}: unknown config key {key!r}")
        elif key not in _SCALAR_KEYS:
            raise ValueError(f"{source}: unknown config key {key!r}")


def config_from_mapping(raw: dict[str, str], source: str = "<config>") -> RunConfig:
    _check_keys(raw, source)
    if "languages" not in raw:
        raise ValueError(f"{source}: missing required key 'languages'")
    languages = [x.strip() for x in raw["languages"].split(",") if x.strip()]
    cfg = RunConfig(languages=languages)
    for key, value in raw.items():
        base, _, lang = key.partition(".")
        if lang:
            getattr(cfg, base)[lang] = value
            continue
        if key == "languages":
            continue
        if key in ("taxonomy", "workdir"):
            setattr(cfg, key, value)
        elif key in ("alpha", "beta", "max_df", "min_df"):
            setattr(cfg, key, float(value))
        else:
            setattr(cfg, key, int(value))
    for lang in cfg.corpus:
        if lang not in cfg.languages:
            raise ValueError(f"{source}: corpus.{lang} is not a configured language")
    return cfg


def load_config(path: str | Path) -> RunConfig:
    text = Path(path).read_text(encoding="utf-8")
    return config_from_mapping(parse_config_text(text, str(path)), str(path))
