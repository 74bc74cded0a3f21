"""Hierarchical category thesauri and reduction to root labels.

Category annotations in thesauri like EUROVOC are organized by
broader-than relations. Reducing a document's labels to the root
concepts they derive from yields a disjoint label set that can seed a
supervised topic model (one topic per root label).
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable


@dataclass
class Taxonomy:
    """Labels plus an acyclic label -> parents relation."""

    labels: set[str]
    broader: dict[str, set[str]]
    _root_cache: dict[str, frozenset[str]] = field(default_factory=dict, repr=False)

    @property
    def roots(self) -> set[str]:
        return {lbl for lbl in self.labels if not self.broader.get(lbl)}


def _find_cycle(labels: set[str], broader: dict[str, set[str]]) -> list[str] | None:
    """Return one offending cycle as a label path, or None."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {lbl: WHITE for lbl in labels}
    parent_on_path: dict[str, str] = {}
    for start in sorted(labels):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(sorted(broader.get(start, ()))))]
        color[start] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == GRAY:
                    # unwind the gray path to report the cycle
                    cycle = [nxt, node]
                    cur = node
                    while cur != nxt:
                        cur = parent_on_path[cur]
                        cycle.append(cur)
                    cycle.reverse()
                    return cycle
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    parent_on_path[nxt] = node
                    stack.append((nxt, iter(sorted(broader.get(nxt, ())))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return None


def _build(labels: set[str], broader: dict[str, set[str]]) -> Taxonomy:
    cycle = _find_cycle(labels, broader)
    if cycle:
        raise ValueError("taxonomy contains a cycle: " + " -> ".join(cycle))
    return Taxonomy(labels, broader)


def load_taxonomy(path: str | Path) -> Taxonomy:
    """Load a broader-than taxonomy from a ``child<TAB>parent`` TSV.

    Lines starting with '#' are comments. Multiple parents per child are
    tolerated even though strict thesauri are mono-hierarchical; reduction
    then unions the roots reachable through every parent.
    """
    labels: set[str] = set()
    broader: dict[str, set[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise ValueError(f"{path}:{lineno}: expected 'child<TAB>parent'")
            child, parent = parts
            labels.add(child)
            labels.add(parent)
            broader.setdefault(child, set()).add(parent)
    return _build(labels, broader)


def load_skos_json(path: str | Path) -> Taxonomy:
    """Load the broader relations of a SKOS-style JSON export.

    Expects ``{"concepts": [{"id": "...", "broader": ["...", ...]}, ...]}``;
    ``broader`` may be omitted for root concepts.
    """
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict) or "concepts" not in obj:
        raise ValueError(f"{path}: expected an object with a 'concepts' array")
    labels: set[str] = set()
    broader: dict[str, set[str]] = {}
    for concept in obj["concepts"]:
        cid = concept["id"]
        labels.add(cid)
        for parent in concept.get("broader", []):
            labels.add(parent)
            broader.setdefault(cid, set()).add(parent)
    return _build(labels, broader)


def _roots_of(tax: Taxonomy, label: str) -> frozenset[str]:
    cache = tax._root_cache
    if label in cache:
        return cache[label]
    # iterative post-order so kilonode-deep chains don't blow the stack
    stack = [label]
    while stack:
        node = stack[-1]
        if node in cache:
            stack.pop()
            continue
        parents = tax.broader.get(node)
        if not parents:
            cache[node] = frozenset({node})
            stack.pop()
            continue
        pending = [p for p in parents if p not in cache]
        if pending:
            stack.extend(pending)
            continue
        acc: set[str] = set()
        for parent in parents:
            acc |= cache[parent]
        cache[node] = frozenset(acc)
        stack.pop()
    return cache[label]


def reduce_to_roots(tax: Taxonomy, labels: Iterable[str]) -> set[str]:
    """Map each label to the root concepts it derives from; union the results.

    Roots map to themselves. Acyclicity guarantees a nonempty result for
    nonempty input. Unknown labels raise ValueError.
    """
    out: set[str] = set()
    for label in labels:
        if label not in tax.labels:
            raise ValueError(f"unknown label {label!r}")
        out |= _roots_of(tax, label)
    return out
