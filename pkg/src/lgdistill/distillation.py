"""Edge potential, greedy edge selection, path selection and pseudo-data generation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .corpus import PSEUDO_BACKWARD, PSEUDO_FORWARD, REAL, ParallelCorpus, provenance_kind
from .errors import AlignmentError, InvalidConfig, MissingEntry
from .pathtable import BACKWARD, FORWARD, TranslationPath
from .translator import pipeline_translate

NO_POTENTIAL = -math.inf
DEFAULT_BUDGET = 2000


@dataclass(frozen=True)
class PotentialScore:
    edge: tuple[str, str]
    direct: float
    best_path: TranslationPath | None
    best_path_score: float
    potential: float


@dataclass
class DistillationPlan:
    edge: tuple[str, str]
    forward_paths: list[TranslationPath] = field(default_factory=list)
    backward_paths: list[TranslationPath] = field(default_factory=list)
    forward_scores: list[float] = field(default_factory=list)
    backward_scores: list[float] = field(default_factory=list)
    budget: int = DEFAULT_BUDGET

    @property
    def paths(self) -> list[TranslationPath]:
        return self.forward_paths + self.backward_paths


def potential(table, edge, H: int, aggregation: str = "max", K: int = 1) -> PotentialScore:
    """Gap between the best multi-hop forward paths and the direct edge.

    ``aggregation="max"`` uses the single best 2..H-hop path;
    ``"mean-top-k"`` averages the K best. With no multi-hop path the
    potential is ``-inf``.
    """
    src, tgt = edge
    direct = table.direct(src, tgt)
    if direct is None:
        raise MissingEntry(f"no 1-hop entry for {src}->{tgt}")
    cands = _ranked(table.paths(src, tgt, 2, H))
    if not cands:
        return PotentialScore(edge, direct, None, NO_POTENTIAL, NO_POTENTIAL)
    best_langs, best = cands[0]
    if aggregation == "max":
        agg = best
    elif aggregation == "mean-top-k":
        top = [s for _, s in cands[:K]]
        agg = math.fsum(top) / len(top)
    else:
        raise InvalidConfig(f"unknown potential aggregation {aggregation!r}")
    return PotentialScore(edge, direct, TranslationPath(best_langs), best, agg - direct)


def _ranked(cands):
    return sorted(cands, key=lambda c: (-c[1], len(c[0]), c[0]))


def all_potentials(table, H: int, aggregation: str = "max", K: int = 1) -> list[PotentialScore]:
    return [potential(table, e, H, aggregation, K) for e in sorted(table.weights())]


def select_edges(table, M: int, H: int, aggregation: str = "max", K: int = 1) -> list[tuple[str, str]]:
    """The M edges with the largest strictly positive potential.

    Ties go to the lexicographically smaller ``(src, tgt)``.
    """
    if M < 1:
        raise InvalidConfig(f"edges per iteration must be >= 1, got {M}")
    scored = [p for p in all_potentials(table, H, aggregation, K) if p.potential > 0]
    scored.sort(key=lambda p: (-p.potential, p.edge))
    return [p.edge for p in scored[:M]]


def select_paths(
    table,
    edge,
    K: int,
    delta: float,
    H: int,
    budget: int = DEFAULT_BUDGET,
    forward: bool = True,
    backward: bool = True,
    backward_H: int | None = None,
) -> DistillationPlan:
    """Top-K forward (2..H hops) and backward (1..H hops) paths passing the quality bar.

    A forward path qualifies with score >= W(edge) - delta, a backward path
    with score >= W(reverse edge) - delta. When the reverse edge has no
    entry the forward edge's accuracy is the bar.
    """
    if K < 1:
        raise InvalidConfig(f"K must be >= 1, got {K}")
    if delta < 0:
        raise InvalidConfig(f"delta must be >= 0, got {delta}")
    src, tgt = edge
    direct = table.direct(src, tgt)
    if direct is None:
        raise MissingEntry(f"no 1-hop entry for {src}->{tgt}")
    plan = DistillationPlan(edge, budget=budget)
    if forward:
        for langs, s in _top(table.paths(src, tgt, 2, H), direct - delta, K):
            plan.forward_paths.append(TranslationPath(langs, FORWARD))
            plan.forward_scores.append(s)
    if backward:
        rev = table.direct(tgt, src)
        bar = (rev if rev is not None else direct) - delta
        bh = H if backward_H is None else backward_H
        for langs, s in _top(table.paths(tgt, src, 1, bh), bar, K):
            plan.backward_paths.append(TranslationPath(langs, BACKWARD))
            plan.backward_scores.append(s)
    return plan


def _top(cands, bar, K):
    return [c for c in _ranked(cands) if c[1] >= bar][:K]


def pool_sentences(mono, corpus, side: str, budget: int) -> list[str]:
    """Monolingual sentences first, then the real bitext side, capped at ``budget``."""
    pool = list(mono.sentences) if mono is not None else []
    if corpus is not None:
        pool.extend(corpus.sources(REAL) if side == "source" else corpus.targets(REAL))
    return pool[:budget]


def _distill(paths, model, sentences, budget, kind, edge, reverse):
    src, tgt = edge
    seen = set()
    pairs, prov = [], []
    inputs = list(sentences)[:budget]
    for path in paths:
        outputs = pipeline_translate(model, path, inputs)
        tag = f"{kind}:{path}"
        for inp, out in zip(inputs, outputs):
            pair = (out, inp) if reverse else (inp, out)
            if pair in seen:
                continue
            seen.add(pair)
            pairs.append(pair)
            prov.append(tag)
    return ParallelCorpus(src, tgt, pairs, prov)


def forward_distill(plan: DistillationPlan, model, sources) -> ParallelCorpus:
    """``(source, pseudo-target)`` pairs from every forward path; exact duplicates dropped."""
    return _distill(plan.forward_paths, model, sources, plan.budget, PSEUDO_FORWARD, plan.edge, reverse=False)


def backward_distill(plan: DistillationPlan, model, targets) -> ParallelCorpus:
    """``(pseudo-source, target)`` pairs from every backward path.

    With only the 1-hop reverse path this is plain back-translation.
    """
    return _distill(plan.backward_paths, model, targets, plan.budget, PSEUDO_BACKWARD, plan.edge, reverse=True)


def assemble_training_set(real: ParallelCorpus, pseudo) -> ParallelCorpus:
    """Append pseudo pairs to ``real`` unless they duplicate a pair already present."""
    out_pairs = list(real.pairs)
    out_prov = list(real.provenance)
    seen = set(out_pairs)
    for corpus in pseudo:
        if corpus.direction != real.direction:
            raise AlignmentError(f"corpus {corpus.direction} cannot join {real.direction}")
        for pair, tag in zip(corpus.pairs, corpus.provenance):
            if pair in seen:
                continue
            seen.add(pair)
            out_pairs.append(pair)
            out_prov.append(tag)
    return ParallelCorpus(real.src_lang, real.tgt_lang, out_pairs, out_prov)


def provenance_counts(corpus: ParallelCorpus) -> dict:
    counts = {REAL: 0, PSEUDO_FORWARD: 0, PSEUDO_BACKWARD: 0}
    for tag in corpus.provenance:
        counts[provenance_kind(tag)] += 1
    return counts
