"""Trainable lexical translator standing in for a tagged multilingual NMT model.

Each translation direction gets its own IBM Model 1 lexicon; together they
play the role of one multilingual model where the direction key replaces the
target-language tag on the encoder input. Translation is per-token argmax
substitution with unknown words copied through.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import ParallelCorpus, REAL, provenance_kind
from .errors import DataError, EmptyTrainingSet, InvalidConfig, UntrainedDirection


@dataclass(frozen=True)
class TrainerConfig:
    em_iterations: int = 5
    upsample: bool = True
    real_weight: float = 1.0
    pseudo_weight: float = 1.0
    # entries below this probability are dropped (and the rest renormalized)
    prune: float = 1e-7

    def validate(self) -> "TrainerConfig":
        if not isinstance(self.em_iterations, int) or self.em_iterations < 1:
            raise InvalidConfig(f"trainer.em_iterations must be a positive int, got {self.em_iterations!r}")
        if self.real_weight <= 0 or self.pseudo_weight <= 0:
            raise InvalidConfig("trainer.real_weight and trainer.pseudo_weight must be positive")
        if not 0 <= self.prune < 1:
            raise InvalidConfig("trainer.prune must be in [0, 1)")
        return self


class Lexicon:
    """``source word -> [(target word, P(target | source)), ...]``.

    Candidate lists are sorted by probability, then target word, so the first
    entry is the argmax with lexicographic tie-breaking.
    """

    def __init__(self, entries: dict[str, list[tuple[str, float]]]):
        self.entries = {s: sorted(cands, key=lambda c: (-c[1], c[0])) for s, cands in entries.items()}
        self._best = {s: cands[0][0] for s, cands in self.entries.items() if cands}

    @classmethod
    def from_mapping(cls, mapping: dict[str, str]) -> "Lexicon":
        return cls({s: [(t, 1.0)] for s, t in mapping.items()})

    def __len__(self):
        return len(self.entries)

    def __contains__(self, word):
        return word in self._best

    def __eq__(self, other):
        return isinstance(other, Lexicon) and self.entries == other.entries

    def best(self, word: str) -> str | None:
        return self._best.get(word)

    def argmax_map(self) -> dict[str, str]:
        return dict(self._best)

    def prob(self, src: str, tgt: str) -> float:
        for t, p in self.entries.get(src, ()):
            if t == tgt:
                return p
        return 0.0

    def translate_sentence(self, sentence: str) -> str:
        best = self._best
        return " ".join(best.get(w, w) for w in sentence.split())

    def to_dict(self) -> dict:
        return {s: [[t, p] for t, p in cands] for s, cands in sorted(self.entries.items())}

    @classmethod
    def from_dict(cls, d: dict) -> "Lexicon":
        return cls({s: [(t, float(p)) for t, p in cands] for s, cands in d.items()})


def _unpack(pairs, weights):
    pairs = list(pairs)
    if weights is None:
        weights = [p[2] if len(p) == 3 else 1.0 for p in pairs]
    weights = list(weights)
    if len(weights) != len(pairs):
        raise DataError("one weight per sentence pair is required")
    return [(p[0], p[1]) for p in pairs], weights


def ibm1_em(pairs, iterations: int = 5, weights=None, prune: float = 0.0) -> Lexicon:
    """IBM Model 1 EM for ``P(target word | source word)`` without a NULL word.

    ``pairs`` holds ``(source, target)`` or ``(source, target, weight)``
    tuples of whitespace-tokenized sentences. Weights scale each pair's
    expected counts. Starts from uniform probabilities.
    """
    if iterations < 1:
        raise InvalidConfig(f"iterations must be >= 1, got {iterations}")
    pairs, weights = _unpack(pairs, weights)
    if not pairs:
        raise EmptyTrainingSet("IBM-1 needs at least one sentence pair")

    src_ids: dict[str, int] = {}
    tgt_ids: dict[str, int] = {}
    # one row per (target position, source position) co-occurrence
    grp, s_col, t_col, w_col = [], [], [], []
    g = 0
    for (src, tgt), w in zip(pairs, weights):
        if w <= 0:
            raise DataError(f"pair weights must be positive, got {w}")
        s_idx = [src_ids.setdefault(x, len(src_ids)) for x in src.split()]
        t_idx = [tgt_ids.setdefault(x, len(tgt_ids)) for x in tgt.split()]
        if not s_idx or not t_idx:
            raise DataError("empty sentence in training pair")
        for tj in t_idx:
            grp.extend([g] * len(s_idx))
            s_col.extend(s_idx)
            t_col.extend([tj] * len(s_idx))
            w_col.extend([w] * len(s_idx))
            g += 1

    n_tgt = len(tgt_ids)
    grp = np.asarray(grp, dtype=np.int64)
    w_col = np.asarray(w_col, dtype=np.float64)
    key = np.asarray(s_col, dtype=np.int64) * n_tgt + np.asarray(t_col, dtype=np.int64)
    uniq, inv = np.unique(key, return_inverse=True)
    pair_s = uniq // n_tgt
    pair_t = uniq % n_tgt

    prob = np.full(len(uniq), 1.0 / n_tgt)
    for _ in range(iterations):
        p = prob[inv]
        denom = np.bincount(grp, weights=p, minlength=g)
        post = w_col * p / denom[grp]
        counts = np.bincount(inv, weights=post, minlength=len(uniq))
        totals = np.bincount(pair_s, weights=counts, minlength=len(src_ids))
        prob = counts / totals[pair_s]

    src_words = list(src_ids)
    tgt_words = list(tgt_ids)
    entries: dict[str, list[tuple[str, float]]] = {w: [] for w in src_words}
    for s, t, p in zip(pair_s.tolist(), pair_t.tolist(), prob.tolist()):
        entries[src_words[s]].append((tgt_words[t], p))
    if prune > 0:
        entries = {s: _prune(c, prune) for s, c in entries.items()}
    return Lexicon(entries)


def _prune(cands, threshold):
    top = min(cands, key=lambda c: (-c[1], c[0]))
    kept = [c for c in cands if c[1] >= threshold] or [top]
    total = math.fsum(p for _, p in kept)
    return [(t, p / total) for t, p in kept]


@dataclass(frozen=True)
class MultilingualModel:
    directions: dict = field(default_factory=dict)
    trained_on: dict = field(default_factory=dict)

    def has_direction(self, src: str, tgt: str) -> bool:
        return (src, tgt) in self.directions

    def lexicon(self, src: str, tgt: str) -> Lexicon:
        try:
            return self.directions[(src, tgt)]
        except KeyError:
            raise UntrainedDirection(src, tgt) from None

    def translate(self, src: str, tgt: str, sentences) -> list[str]:
        lex = self.lexicon(src, tgt)
        return [lex.translate_sentence(s) for s in sentences]

    def updated(self, other: "MultilingualModel") -> "MultilingualModel":
        """New model with ``other``'s directions replacing or adding to ours."""
        return MultilingualModel({**self.directions, **other.directions}, {**self.trained_on, **other.trained_on})

    def to_dict(self) -> dict:
        return {
            "directions": [
                {"src": s, "tgt": t, "trained_on": self.trained_on.get((s, t)), "lexicon": lex.to_dict()}
                for (s, t), lex in sorted(self.directions.items())
            ]
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MultilingualModel":
        directions, trained_on = {}, {}
        for item in d["directions"]:
            key = (item["src"], item["tgt"])
            directions[key] = Lexicon.from_dict(item["lexicon"])
            if item.get("trained_on") is not None:
                trained_on[key] = item["trained_on"]
        return cls(directions, trained_on)

    def save(self, path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.to_dict(), sort_keys=True) + "\n", encoding="utf-8")
        return path

    @classmethod
    def load(cls, path) -> "MultilingualModel":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def pair_weights(corpus: ParallelCorpus, config: TrainerConfig) -> list[float]:
    return [config.real_weight if provenance_kind(p) == REAL else config.pseudo_weight for p in corpus.provenance]


def train_multilingual(corpora: dict, config: TrainerConfig = TrainerConfig(), reference_mass=None) -> MultilingualModel:
    """One lexicon per direction with a non-empty corpus.

    With ``upsample`` each direction's pair weights are rescaled so its total
    mass equals ``reference_mass`` (default: the largest direction's mass).
    """
    config.validate()
    raw = {e: pair_weights(c, config) for e, c in sorted(corpora.items()) if len(c)}
    if not raw:
        raise EmptyTrainingSet("every corpus is empty")
    masses = {e: math.fsum(w) for e, w in raw.items()}
    if reference_mass is None:
        reference_mass = max(masses.values())

    directions, trained_on = {}, {}
    for e, w in raw.items():
        if config.upsample:
            factor = reference_mass / masses[e]
            w = [x * factor for x in w]
        lex = ibm1_em(corpora[e].pairs, config.em_iterations, weights=w, prune=config.prune)
        directions[e] = lex
        trained_on[e] = math.fsum(w)
    return MultilingualModel(directions, trained_on)


def translate(model, src: str, tgt: str, sentences) -> list[str]:
    return model.translate(src, tgt, sentences)


def pipeline_translate(model, path, sentences) -> list[str]:
    """Translate hop by hop along ``path`` (a TranslationPath or language sequence)."""
    langs = list(getattr(path, "langs", path))
    if len(langs) < 2:
        raise InvalidConfig("a translation path needs at least two languages")
    for i, (s, t) in enumerate(zip(langs, langs[1:])):
        if not model.has_direction(s, t):
            raise UntrainedDirection(s, t, hop=i)
    out = list(sentences)
    for s, t in zip(langs, langs[1:]):
        out = model.translate(s, t, out)
    return out


def oracle_model(world, directions) -> MultilingualModel:
    """Model whose lexicons are the world's ground-truth word maps."""
    from .world import oracle_lexicons

    maps = oracle_lexicons(world, directions)
    return MultilingualModel({e: Lexicon.from_mapping(m) for e, m in maps.items()}, {e: 0.0 for e in maps})
