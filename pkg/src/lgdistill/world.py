"""Synthetic multilingual world with known ground truth.

Every language shares one concept vocabulary and renders each concept with
its own word, so the reference translation between any two languages is
known exactly. Concepts are drawn from a Zipf law over concept ids.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .corpus import MonoCorpus, MultiParallelSet, ParallelCorpus
from .errors import InvalidConfig, InvalidGraph, UnknownConcept, UnknownLanguage
from .graph import LanguageGraph, check_code

SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class WorldConfig:
    languages: tuple[str, ...]
    concept_count: int = 300
    zipf_exponent: float = 1.0
    sentence_len: tuple[int, int] = (4, 12)
    # language -> block size for within-block token reversal; off by default
    reorder: dict = field(default_factory=dict)

    def validate(self) -> "WorldConfig":
        if not self.languages:
            raise InvalidConfig("world.languages: at least one language is required")
        if len(set(self.languages)) != len(self.languages):
            raise InvalidConfig("world.languages: duplicate language code")
        for code in self.languages:
            check_code(code)
        if not isinstance(self.concept_count, int) or self.concept_count < 1:
            raise InvalidConfig(f"world.concept_count must be >= 1, got {self.concept_count!r}")
        if self.zipf_exponent < 0:
            raise InvalidConfig(f"world.zipf_exponent must be >= 0, got {self.zipf_exponent!r}")
        lo, hi = self.sentence_len
        if not (1 <= lo <= hi):
            raise InvalidConfig(f"world.sentence_len must satisfy 1 <= min <= max, got {self.sentence_len!r}")
        for lang, block in self.reorder.items():
            if lang not in self.languages:
                raise InvalidConfig(f"world.reorder names unknown language {lang!r}")
            if not isinstance(block, int) or block < 2:
                raise InvalidConfig(f"world.reorder[{lang}] block size must be an int >= 2")
        return self

    def to_dict(self) -> dict:
        d = asdict(self)
        d["languages"] = list(self.languages)
        d["sentence_len"] = list(self.sentence_len)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "WorldConfig":
        d = dict(d)
        d["languages"] = tuple(d.get("languages", ()))
        if "sentence_len" in d:
            d["sentence_len"] = tuple(d["sentence_len"])
        d["reorder"] = dict(d.get("reorder") or {})
        try:
            return cls(**d)
        except TypeError as exc:
            raise InvalidConfig(f"world: {exc}") from None


def derive_rng(seed: int, *labels) -> np.random.Generator:
    """Independent generator for a named stream; labels are hashed stably."""
    words = [int(seed) & SEED_MASK]
    words.extend(zlib.crc32(str(label).encode("utf-8")) for label in labels)
    return np.random.default_rng(np.random.SeedSequence(words))


@dataclass
class ConceptWorld:
    config: WorldConfig
    seed: int
    lexicons: dict[str, list[str]]

    def __post_init__(self):
        self._inverse = {lang: {w: c for c, w in enumerate(words)} for lang, words in self.lexicons.items()}
        self._probs = zipf_probs(self.config.concept_count, self.config.zipf_exponent)

    @property
    def concept_count(self) -> int:
        return self.config.concept_count

    @property
    def languages(self) -> list[str]:
        return list(self.config.languages)

    def _lexicon(self, lang):
        try:
            return self.lexicons[lang]
        except KeyError:
            raise UnknownLanguage(f"language {lang!r} is not part of this world") from None

    def render(self, concepts, lang: str) -> str:
        words = self._lexicon(lang)
        out = []
        for c in concepts:
            if not 0 <= c < len(words):
                raise UnknownConcept(f"concept {c} outside [0, {len(words)})")
            out.append(words[c])
        block = self.config.reorder.get(lang)
        if block:
            out = _block_reverse(out, block)
        return " ".join(out)

    def invert(self, sentence: str, lang: str) -> tuple[int, ...]:
        """Concept ids of a rendered sentence (inverse of :meth:`render`)."""
        self._lexicon(lang)
        tokens = sentence.split()
        block = self.config.reorder.get(lang)
        if block:
            tokens = _block_reverse(tokens, block)
        inv = self._inverse[lang]
        try:
            return tuple(inv[w] for w in tokens)
        except KeyError as exc:
            raise UnknownConcept(f"word {exc.args[0]!r} is not in the {lang} lexicon") from None

    def ground_truth(self, sentence: str, src: str, tgt: str) -> str:
        return self.render(self.invert(sentence, src), tgt)

    def sample_concepts(self, rng: np.random.Generator, n: int) -> list[tuple[int, ...]]:
        lo, hi = self.config.sentence_len
        lengths = rng.integers(lo, hi + 1, size=n)
        flat = rng.choice(self.concept_count, size=int(lengths.sum()), p=self._probs)
        out, i = [], 0
        for k in lengths:
            out.append(tuple(int(c) for c in flat[i : i + k]))
            i += k
        return out

    def multiparallel(self, concepts, languages=None) -> MultiParallelSet:
        langs = sorted(languages or self.languages)
        return MultiParallelSet(list(concepts), {lang: [self.render(c, lang) for c in concepts] for lang in langs})

    def manifest(self) -> dict:
        return {"seed": self.seed, "config": self.config.to_dict(), "lexicons": self.lexicons}

    def save(self, path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.manifest(), indent=1, sort_keys=True) + "\n", encoding="utf-8")
        return path

    @classmethod
    def load(cls, path) -> "ConceptWorld":
        d = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(WorldConfig.from_dict(d["config"]).validate(), d["seed"], d["lexicons"])


def _block_reverse(tokens, block):
    out = []
    for i in range(0, len(tokens), block):
        out.extend(reversed(tokens[i : i + block]))
    return out


def zipf_probs(n: int, exponent: float) -> np.ndarray:
    ranks = np.arange(1, n + 1, dtype=np.float64)
    w = ranks ** (-float(exponent))
    return w / w.sum()


def generate_world(config: WorldConfig, seed: int) -> ConceptWorld:
    """Deterministic world: each lexicon is a seeded permutation of ``<lang>_<i>`` words."""
    config.validate()
    lexicons = {}
    for lang in config.languages:
        perm = derive_rng(seed, "lexicon", lang).permutation(config.concept_count)
        lexicons[lang] = [f"{lang}_{int(i)}" for i in perm]
    return ConceptWorld(config, int(seed), lexicons)


def generate_corpora(world: ConceptWorld, graph: LanguageGraph, dev_size: int, test_size: int, seed: int):
    """Training, monolingual and evaluation data sized by the graph's counts.

    Both directions between two languages draw from one shared stream of
    concept sequences, so ``a->b`` and ``b->a`` with equal counts are the same
    bitext reversed. Dev and test come from their own streams.
    """
    try:
        graph.validate()
    except Exception as exc:
        raise InvalidGraph(str(exc)) from exc
    missing = sorted(graph.nodes - set(world.languages))
    if missing:
        raise InvalidGraph(f"graph languages {missing} are not in the world")
    if dev_size < 1 or test_size < 1:
        raise InvalidConfig("dev_size and test_size must be >= 1")

    corpora = {}
    for (s, t) in graph.sorted_edges():
        a, b = sorted((s, t))
        need = max(graph.count(a, b), graph.count(b, a))
        seqs = world.sample_concepts(derive_rng(seed, "bitext", a, b), need)[: graph.count(s, t)]
        corpora[(s, t)] = ParallelCorpus(s, t, [(world.render(c, s), world.render(c, t)) for c in seqs])

    mono = {}
    for v in graph.languages():
        seqs = world.sample_concepts(derive_rng(seed, "mono", v), graph.mono(v))
        mono[v] = MonoCorpus(v, [world.render(c, v) for c in seqs])

    langs = graph.languages()
    dev = world.multiparallel(world.sample_concepts(derive_rng(seed, "dev"), dev_size), langs)
    test = world.multiparallel(world.sample_concepts(derive_rng(seed, "test"), test_size), langs)
    return corpora, mono, dev, test


def oracle_lexicons(world: ConceptWorld, directions) -> dict:
    """Ground-truth word maps ``src word -> tgt word`` for each direction."""
    out = {}
    for s, t in directions:
        out[(s, t)] = dict(zip(world.lexicons[s], world.lexicons[t]))
    return out
