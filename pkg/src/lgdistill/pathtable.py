"""Multi-hop translation paths and the per-hop accuracy tables.

A path's accuracy is measured, not estimated: the shared multi-parallel dev
set is translated hop by hop and scored against the reference lines of the
final language.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import AlignmentError, InvalidConfig, UnknownLanguage, UntrainedDirection
from .metrics import bleu
from .translator import pipeline_translate

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True, order=True)
class TranslationPath:
    langs: tuple[str, ...]
    direction: str = FORWARD

    def __post_init__(self):
        object.__setattr__(self, "langs", tuple(self.langs))
        if len(self.langs) < 2:
            raise InvalidConfig("a path needs at least two languages")
        if len(set(self.langs)) != len(self.langs):
            raise InvalidConfig(f"path {self} repeats a language")
        if self.direction not in (FORWARD, BACKWARD):
            raise InvalidConfig(f"unknown path direction {self.direction!r}")

    @property
    def hops(self) -> int:
        return len(self.langs) - 1

    @property
    def src(self) -> str:
        return self.langs[0]

    @property
    def tgt(self) -> str:
        return self.langs[-1]

    def __str__(self):
        return "->".join(self.langs)


def enumerate_paths(graph, src: str, tgt: str, H: int, usable=None) -> list[TranslationPath]:
    """All simple directed paths ``src -> ... -> tgt`` with 1..H hops.

    ``usable(u, v)`` optionally restricts which edges may be traversed.
    Ordered by hop count, then language sequence.
    """
    if not isinstance(H, int) or H < 1:
        raise InvalidConfig(f"max hops must be >= 1, got {H!r}")
    for v in (src, tgt):
        if v not in graph.nodes:
            raise UnknownLanguage(f"language {v!r} is not declared")
    if src == tgt:
        raise InvalidConfig("source and target must differ")

    succ = {v: [] for v in graph.nodes}
    for (u, v) in graph.edge_data:
        if usable is None or usable(u, v):
            succ[u].append(v)

    found = []
    stack = [src]

    def extend(u):
        for v in succ[u]:
            if v == tgt:
                found.append(tuple(stack) + (v,))
            elif v not in stack and len(stack) < H:
                stack.append(v)
                extend(v)
                stack.pop()

    extend(src)
    found.sort(key=lambda p: (len(p), p))
    return [TranslationPath(p) for p in found]


def evaluate_path(path, model, devset) -> float:
    langs = list(getattr(path, "langs", path))
    for lang in langs:
        devset.lines(lang)
    hyps = pipeline_translate(model, langs, devset.lines(langs[0]))
    return bleu(hyps, devset.lines(langs[-1])).score


@dataclass
class AccuracyTable:
    """Sparse storage of the per-hop tables, keyed by ``(hops, langs)``."""

    entries: dict
    iteration: int = 0

    def score(self, langs) -> float | None:
        langs = tuple(langs)
        return self.entries.get((len(langs) - 1, langs))

    def direct(self, src: str, tgt: str) -> float | None:
        return self.entries.get((1, (src, tgt)))

    def weights(self) -> dict:
        """The 1-hop entries as an edge -> accuracy map."""
        return {langs: s for (h, langs), s in sorted(self.entries.items()) if h == 1}

    def paths(self, src: str, tgt: str, min_hops: int = 1, max_hops: int | None = None) -> list[tuple[tuple, float]]:
        out = []
        for (h, langs), s in self.entries.items():
            if langs[0] == src and langs[-1] == tgt and h >= min_hops and (max_hops is None or h <= max_hops):
                out.append((langs, s))
        out.sort(key=lambda x: (len(x[0]), x[0]))
        return out

    def hop_table(self, h: int) -> dict:
        return {langs: s for (k, langs), s in self.entries.items() if k == h}

    def __len__(self):
        return len(self.entries)

    def rows(self):
        for (h, langs), s in sorted(self.entries.items()):
            yield "->".join(langs), h, s, self.iteration

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "entries": [{"path": list(langs), "hops": h, "score": s} for (h, langs), s in sorted(self.entries.items())],
        }

    @classmethod
    def from_dict(cls, d) -> "AccuracyTable":
        return cls({(e["hops"], tuple(e["path"])): e["score"] for e in d["entries"]}, d["iteration"])

    def export(self, directory, stem: str | None = None) -> tuple[Path, Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        stem = stem or f"table_T{self.iteration}"
        tsv = directory / f"{stem}.tsv"
        with open(tsv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("path\thops\tscore\titeration\n")
            for path, h, s, t in self.rows():
                fh.write(f"{path}\t{h}\t{s:.4f}\t{t}\n")
        js = directory / f"{stem}.json"
        js.write_text(json.dumps(self.to_dict(), indent=1) + "\n", encoding="utf-8")
        return tsv, js


def build_accuracy_table(graph, model, devset, H: int, iteration: int = 0) -> AccuracyTable:
    """Evaluate every simple path of 1..H hops between every ordered language pair.

    Only edges the model has a trained direction for are traversed; paths
    that cannot be evaluated are left out of the table rather than scored 0.
    """
    if not isinstance(H, int) or H < 1:
        raise InvalidConfig(f"max hops must be >= 1, got {H!r}")
    usable = lambda u, v: model.has_direction(u, v)  # noqa: E731
    entries = {}
    langs = graph.languages()
    for s in langs:
        for t in langs:
            if s == t:
                continue
            for path in enumerate_paths(graph, s, t, H, usable):
                try:
                    entries[(path.hops, path.langs)] = evaluate_path(path, model, devset)
                except (AlignmentError, UntrainedDirection):
                    continue
    return AccuracyTable(entries, iteration)
