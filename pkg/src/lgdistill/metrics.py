"""Corpus BLEU with multi-bleu semantics and improvement arithmetic."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .errors import AlignmentError, EmptyInput

MAX_ORDER = 4


@dataclass(frozen=True)
class BleuScore:
    score: float
    precisions: tuple[float, ...]
    brevity_penalty: float
    hyp_len: int
    ref_len: int

    def __str__(self):
        precs = "/".join(f"{100 * p:.1f}" for p in self.precisions)
        return (
            f"BLEU = {self.score:.2f}, {precs} "
            f"(BP={self.brevity_penalty:.3f}, ratio={self.hyp_len / max(self.ref_len, 1):.3f}, "
            f"hyp_len={self.hyp_len}, ref_len={self.ref_len})"
        )


def _ngrams(tokens, n):
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(hypotheses, references) -> BleuScore:
    """Tokenized, case-sensitive corpus BLEU-4 against a single reference.

    Clipped n-gram counts are pooled over the corpus; there is no smoothing,
    so any zero precision gives a score of 0. An order with no hypothesis
    n-grams at all (every sentence shorter than n) has precision 1.0.
    """
    if len(hypotheses) != len(references):
        raise AlignmentError(
            f"{len(hypotheses)} hypotheses vs {len(references)} references", len(hypotheses), len(references)
        )
    if not hypotheses:
        raise EmptyInput("BLEU needs at least one sentence")

    matches = [0] * MAX_ORDER
    totals = [0] * MAX_ORDER
    hyp_len = ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        h, r = hyp.split(), ref.split()
        hyp_len += len(h)
        ref_len += len(r)
        for n in range(1, MAX_ORDER + 1):
            hc, rc = _ngrams(h, n), _ngrams(r, n)
            matches[n - 1] += sum(min(c, rc[g]) for g, c in hc.items())
            totals[n - 1] += max(len(h) - n + 1, 0)

    precisions = tuple(m / t if t else 1.0 for m, t in zip(matches, totals))
    if hyp_len == 0:
        bp = 0.0
    elif hyp_len > ref_len:
        bp = 1.0
    else:
        bp = math.exp(1.0 - ref_len / hyp_len)
    if min(precisions) <= 0.0:
        score = 0.0
    else:
        score = 100.0 * bp * math.exp(sum(math.log(p) for p in precisions) / MAX_ORDER)
    return BleuScore(score, precisions, bp, hyp_len, ref_len)


def average_improvement(before: dict, after: dict) -> float:
    """Mean of ``after[e] - before[e]`` over a shared, non-empty key set."""
    if set(before) != set(after):
        raise AlignmentError(f"key sets differ: {sorted(set(before) ^ set(after))}")
    if not before:
        raise EmptyInput("average_improvement needs at least one edge")
    keys = sorted(before)
    return math.fsum(after[k] - before[k] for k in keys) / len(keys)
