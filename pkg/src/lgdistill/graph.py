"""The language graph: languages as nodes, translation directions as edges.

Edges are directed. A bilingual corpus between two languages is recorded as
two edges, one per direction, each with its own pair count and (later) its
own accuracy.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import yaml

from .errors import (
    DuplicateLanguage,
    InvalidCode,
    InvalidGraph,
    SelfLoop,
    UnknownLanguage,
)

CODE_RE = re.compile(r"^[A-Za-z][A-Za-z0-9-]{1,7}$")

Edge = tuple[str, str]


def check_code(code) -> str:
    if not isinstance(code, str) or not code:
        raise InvalidCode(f"language code must be a non-empty string, got {code!r}")
    if not CODE_RE.match(code):
        raise InvalidCode(
            f"language code {code!r} must be 2-8 ASCII letters/digits/hyphens, starting with a letter"
        )
    return code


@dataclass
class LanguageGraph:
    nodes: set[str] = field(default_factory=set)
    edge_data: dict[Edge, int] = field(default_factory=dict)
    node_mono: dict[str, int] = field(default_factory=dict)

    @property
    def edges(self) -> set[Edge]:
        return set(self.edge_data)

    def languages(self) -> list[str]:
        return sorted(self.nodes)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edge_data)

    def add_language(self, code: str, mono: int = 0) -> "LanguageGraph":
        check_code(code)
        if code in self.nodes:
            raise DuplicateLanguage(f"language {code!r} already declared")
        _check_count(mono, f"monolingual count for {code}")
        self.nodes.add(code)
        self.node_mono[code] = int(mono)
        return self

    def set_mono(self, code: str, count: int) -> "LanguageGraph":
        self._require(code)
        _check_count(count, f"monolingual count for {code}")
        self.node_mono[code] = int(count)
        return self

    def add_edge(self, src: str, tgt: str, count: int = 0) -> "LanguageGraph":
        self._require(src)
        self._require(tgt)
        if src == tgt:
            raise SelfLoop(f"self-loop edge {src}->{tgt} is not allowed")
        _check_count(count, f"pair count for {src}->{tgt}")
        self.edge_data[(src, tgt)] = int(count)
        return self

    def add_pair(self, a: str, b: str, count: int = 0) -> "LanguageGraph":
        """Add both directions between ``a`` and ``b`` with the same count."""
        self.add_edge(a, b, count)
        self.add_edge(b, a, count)
        return self

    def remove_edge(self, src: str, tgt: str) -> "LanguageGraph":
        try:
            del self.edge_data[(src, tgt)]
        except KeyError:
            raise InvalidGraph(f"no edge {src}->{tgt}") from None
        return self

    def has_edge(self, src: str, tgt: str) -> bool:
        return (src, tgt) in self.edge_data

    def count(self, src: str, tgt: str) -> int:
        return self.edge_data.get((src, tgt), 0)

    def mono(self, v: str) -> int:
        self._require(v)
        return self.node_mono.get(v, 0)

    def successors(self, v: str) -> list[str]:
        return sorted(t for (s, t) in self.edge_data if s == v)

    def bilingual_volume(self, v: str) -> int:
        """Total pair count over edges touching ``v``; each direction counts once."""
        self._require(v)
        return sum(n for (s, t), n in self.edge_data.items() if v in (s, t))

    def validate(self) -> "LanguageGraph":
        for code in self.nodes:
            check_code(code)
        for (s, t), n in self.edge_data.items():
            if s not in self.nodes or t not in self.nodes:
                raise InvalidGraph(f"edge {s}->{t} has an undeclared endpoint")
            if s == t:
                raise InvalidGraph(f"self-loop {s}->{t}")
            if not isinstance(n, int) or n < 0:
                raise InvalidGraph(f"edge {s}->{t} has invalid count {n!r}")
        for v, n in self.node_mono.items():
            if v not in self.nodes:
                raise InvalidGraph(f"monolingual count for undeclared language {v}")
            if not isinstance(n, int) or n < 0:
                raise InvalidGraph(f"language {v} has invalid monolingual count {n!r}")
        return self

    def copy(self) -> "LanguageGraph":
        return LanguageGraph(set(self.nodes), dict(self.edge_data), dict(self.node_mono))

    def _require(self, code):
        if code not in self.nodes:
            raise UnknownLanguage(f"language {code!r} is not declared")

    # -- graph files --------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "languages": {v: {"mono": self.node_mono.get(v, 0)} for v in self.languages()},
            "edges": [[s, t, n] for (s, t), n in sorted(self.edge_data.items())],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LanguageGraph":
        """Build a graph from the document form.

        ``languages`` maps code -> {mono: int} (or a plain list of codes).
        ``edges`` lists directed ``[src, tgt, count]`` triples; ``pairs`` lists
        ``[a, b, count]`` triples that expand into both directions.
        """
        if not isinstance(data, dict):
            raise InvalidGraph("graph document must be a mapping")
        g = cls()
        langs = data.get("languages") or {}
        if isinstance(langs, list):
            langs = {code: {} for code in langs}
        for code, attrs in langs.items():
            attrs = attrs or {}
            g.add_language(str(code), int(attrs.get("mono", 0)))
        for key, add in (("pairs", g.add_pair), ("edges", g.add_edge)):
            for item in data.get(key) or []:
                if len(item) not in (2, 3):
                    raise InvalidGraph(f"{key} entry {item!r} must be [src, tgt] or [src, tgt, count]")
                count = int(item[2]) if len(item) == 3 else 0
                add(str(item[0]), str(item[1]), count)
        return g.validate()


def _check_count(n, what):
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise InvalidGraph(f"{what} must be a non-negative int, got {n!r}")


def objective(weights: dict) -> float:
    """Sum of edge accuracies; the quantity the distillation loop tries to raise."""
    return math.fsum(weights.values())


def load_graph(path) -> LanguageGraph:
    with open(path, encoding="utf-8") as fh:
        return LanguageGraph.from_dict(yaml.safe_load(fh))


def dump_graph(graph: LanguageGraph, path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(graph.to_dict(), fh, sort_keys=False, default_flow_style=None)
    return path


# Languages and bilingual pairs of the 9-language TED subset.
TED9_LANGUAGES = ("Ar", "En", "Fr", "Ru", "Fi", "He", "Nb", "Sk", "Sl")
TED9_GRID = {
    "Ar": ("He", "Sk"),
    "En": ("Fi", "He", "Nb", "Sl"),
    "Fr": ("Fi", "Nb"),
    "Ru": ("Sk", "Sl"),
}
TED9_HUBS = ("Ar", "En", "Fr", "Ru")


def ted9_pairs() -> list[tuple[str, str]]:
    pairs = list(combinations(TED9_HUBS, 2))
    for row, cols in TED9_GRID.items():
        pairs.extend((row, c) for c in cols)
    return pairs


def ted9_graph(count: int = 1, mono: int = 0) -> LanguageGraph:
    """The 9-language topology, every marked pair expanded into both directions."""
    g = LanguageGraph()
    for code in TED9_LANGUAGES:
        g.add_language(code, mono)
    for a, b in ted9_pairs():
        g.add_pair(a, b, count)
    return g
