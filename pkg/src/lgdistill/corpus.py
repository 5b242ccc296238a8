"""Corpus containers and their line-aligned file format.

Parallel data lives in three sibling files sharing a stem, e.g. for the
direction ``fr->en``::

    fr-en.fr     source side, one sentence per line
    fr-en.en     target side, line-aligned with the source
    fr-en.prov   provenance tag per line (optional; missing means all real)

Provenance tags are ``real``, ``pseudo-forward:<path>`` or
``pseudo-backward:<path>`` where ``<path>`` is the language sequence joined
by ``->``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import AlignmentError, DataError

REAL = "real"
PSEUDO_FORWARD = "pseudo-forward"
PSEUDO_BACKWARD = "pseudo-backward"
KINDS = (REAL, PSEUDO_FORWARD, PSEUDO_BACKWARD)


def provenance_kind(tag: str) -> str:
    kind = tag.split(":", 1)[0]
    if kind not in KINDS:
        raise DataError(f"unknown provenance tag {tag!r}")
    return kind


@dataclass
class ParallelCorpus:
    src_lang: str
    tgt_lang: str
    pairs: list[tuple[str, str]] = field(default_factory=list)
    provenance: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.provenance:
            self.provenance = [REAL] * len(self.pairs)
        if len(self.provenance) != len(self.pairs):
            raise AlignmentError(
                f"{len(self.pairs)} pairs but {len(self.provenance)} provenance tags",
                len(self.pairs),
                len(self.provenance),
            )
        for s, t in self.pairs:
            if not s.split() or not t.split():
                raise DataError(f"empty sentence in {self.src_lang}->{self.tgt_lang} corpus")

    @property
    def direction(self) -> tuple[str, str]:
        return (self.src_lang, self.tgt_lang)

    def __len__(self):
        return len(self.pairs)

    def sources(self, kind: str | None = None) -> list[str]:
        return [s for (s, _), p in zip(self.pairs, self.provenance) if kind is None or provenance_kind(p) == kind]

    def targets(self, kind: str | None = None) -> list[str]:
        return [t for (_, t), p in zip(self.pairs, self.provenance) if kind is None or provenance_kind(p) == kind]

    def count(self, kind: str) -> int:
        return sum(1 for p in self.provenance if provenance_kind(p) == kind)

    def reversed(self) -> "ParallelCorpus":
        return ParallelCorpus(self.tgt_lang, self.src_lang, [(t, s) for s, t in self.pairs], list(self.provenance))


@dataclass
class MonoCorpus:
    lang: str
    sentences: list[str] = field(default_factory=list)

    def __post_init__(self):
        if any(not s.split() for s in self.sentences):
            raise DataError(f"empty sentence in {self.lang} monolingual corpus")

    def __len__(self):
        return len(self.sentences)


@dataclass
class MultiParallelSet:
    """Line-aligned renderings of one set of concept sequences in many languages."""

    concepts: list[tuple[int, ...]]
    renderings: dict[str, list[str]]

    def __post_init__(self):
        n = len(self.concepts) if self.concepts else None
        for lang, lines in self.renderings.items():
            if n is None:
                n = len(lines)
            if len(lines) != n:
                raise AlignmentError(f"{lang} has {len(lines)} lines, expected {n}", len(lines), n)

    @property
    def languages(self) -> list[str]:
        return sorted(self.renderings)

    def __len__(self):
        return len(next(iter(self.renderings.values()), []))

    def lines(self, lang: str) -> list[str]:
        try:
            return self.renderings[lang]
        except KeyError:
            raise AlignmentError(f"language {lang!r} missing from multi-parallel set") from None


# -- files -------------------------------------------------------------------


def read_lines(path) -> list[str]:
    text = Path(path).read_text(encoding="utf-8")
    if not text:
        return []
    return text[:-1].split("\n") if text.endswith("\n") else text.split("\n")


def write_lines(path, lines) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")
    return path


def corpus_stem(directory, src: str, tgt: str) -> Path:
    return Path(directory) / f"{src}-{tgt}"


def write_parallel(corpus: ParallelCorpus, directory) -> Path:
    stem = corpus_stem(directory, corpus.src_lang, corpus.tgt_lang)
    write_lines(f"{stem}.{corpus.src_lang}", corpus.sources())
    write_lines(f"{stem}.{corpus.tgt_lang}", corpus.targets())
    write_lines(f"{stem}.prov", corpus.provenance)
    return stem


def read_parallel_files(src_path, tgt_path, src_lang: str, tgt_lang: str, prov_path=None) -> ParallelCorpus:
    src = read_lines(src_path)
    tgt = read_lines(tgt_path)
    if len(src) != len(tgt):
        raise AlignmentError(
            f"line count mismatch: {src_path} has {len(src)} lines, {tgt_path} has {len(tgt)}",
            len(src),
            len(tgt),
        )
    prov = read_lines(prov_path) if prov_path is not None and Path(prov_path).exists() else []
    for i, (s, t) in enumerate(zip(src, tgt), 1):
        if not s.split() or not t.split():
            raise DataError(f"empty sentence at line {i} of {src_path if not s.split() else tgt_path}")
    return ParallelCorpus(src_lang, tgt_lang, list(zip(src, tgt)), prov)


def read_parallel(directory, src: str, tgt: str) -> ParallelCorpus:
    stem = corpus_stem(directory, src, tgt)
    return read_parallel_files(f"{stem}.{src}", f"{stem}.{tgt}", src, tgt, f"{stem}.prov")


def write_multiparallel(mps: MultiParallelSet, prefix) -> list[Path]:
    return [write_lines(f"{prefix}.{lang}", mps.lines(lang)) for lang in mps.languages]


def read_multiparallel(prefix, languages) -> MultiParallelSet:
    renderings = {}
    for lang in languages:
        path = Path(f"{prefix}.{lang}")
        if not path.exists():
            raise DataError(f"missing evaluation file {path}")
        renderings[lang] = read_lines(path)
    return MultiParallelSet([], renderings)
