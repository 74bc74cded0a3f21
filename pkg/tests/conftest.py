import json

import pytest

from synsim import ADJ, NOUN, VERB, TableLemmatizer


@pytest.fixture
def table_lemmatizer():
    """POS-aware lookup lemmatizer used as the recorded tokenizer fixture."""
    return TableLemmatizer({
        "the": ("the", "DET"),
        "a": ("a", "DET"),
        "networks": ("network", NOUN),
        "network": ("network", NOUN),
        "were": ("be", "AUX"),
        "is": ("be", "AUX"),
        "communicating": ("communicate", VERB),
        "communicates": ("communicate", VERB),
        "radio": ("radio", NOUN),
        "radios": ("radio", NOUN),
        "broken": ("broken", ADJ),
        "quickly": ("quickly", "ADV"),
        "new york": ("new york", NOUN),
    })


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    return path


@pytest.fixture
def jsonl_writer():
    return write_jsonl
