import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lgdistill.errors import AlignmentError, EmptyInput
from lgdistill.metrics import average_improvement, bleu

words = st.sampled_from(list("abcdefgh"))
sentences = st.lists(words, min_size=1, max_size=12).map(" ".join)


def test_identity_is_100():
    refs = ["a b c d e", "the cat sat on the mat"]
    assert bleu(refs, refs).score == 100.0


def test_short_hypothesis_brevity_penalty():
    b = bleu(["a b c d e"], ["a b c d e f"])
    assert b.precisions == (1.0, 1.0, 1.0, 1.0)
    assert b.brevity_penalty == pytest.approx(math.exp(1 - 6 / 5), abs=1e-12)
    assert b.score == pytest.approx(81.87307530779818, abs=1e-6)


def test_zero_fourgram_precision_zeroes_score():
    b = bleu(["a b c d"], ["a b c e"])
    assert b.precisions[3] == 0.0
    assert b.score == 0.0


def test_two_sentence_corpus_pools_counts():
    # 1-gram 8/9, 2-gram 5/7, 3-gram 3/5, 4-gram 1/3, equal lengths
    b = bleu(["a b c d", "x y z w v"], ["a b c d", "x y z q v"])
    assert b.precisions == pytest.approx((8 / 9, 5 / 7, 3 / 5, 1 / 3))
    assert b.brevity_penalty == 1.0
    assert b.score == pytest.approx(100 * (8 / 9 * 5 / 7 * 3 / 5 * 1 / 3) ** 0.25, abs=1e-9)


def test_clipped_counts():
    b = bleu(["the the the the"], ["the cat the mat"])
    assert b.precisions[0] == pytest.approx(2 / 4)


def test_case_sensitive():
    assert bleu(["A b c d"], ["a b c d"]).precisions[0] == pytest.approx(3 / 4)


def test_long_hypothesis_no_penalty():
    b = bleu(["a b c d e f"], ["a b c d e"])
    assert b.brevity_penalty == 1.0


def test_errors():
    with pytest.raises(AlignmentError):
        bleu(["a"], [])
    with pytest.raises(EmptyInput):
        bleu([], [])


@given(st.lists(sentences, min_size=1, max_size=8))
def test_self_bleu_is_100(hyps):
    assert bleu(hyps, hyps).score == 100.0


@given(st.lists(st.tuples(sentences, sentences), min_size=1, max_size=10), st.randoms())
def test_permutation_invariant(pairs, rnd):
    h, r = zip(*pairs)
    base = bleu(list(h), list(r))
    shuffled = pairs[:]
    rnd.shuffle(shuffled)
    h2, r2 = zip(*shuffled)
    other = bleu(list(h2), list(r2))
    assert other.score == pytest.approx(base.score, abs=1e-9)
    assert other.precisions == base.precisions


def test_corrupting_a_match_never_helps():
    rng = random.Random(0)
    vocab = [f"w{i}" for i in range(30)]
    refs = [" ".join(rng.choice(vocab) for _ in range(12)) for _ in range(40)]
    hyps = list(refs)
    prev = bleu(hyps, refs).score
    for i in range(20):
        toks = hyps[i].split()
        toks[i % 12] = "ZZZ"
        hyps[i] = " ".join(toks)
        cur = bleu(hyps, refs)
        assert min(cur.precisions) > 0
        assert cur.score <= prev
        prev = cur.score


def test_average_improvement_table_rows():
    before = {("Ar", "Nb"): 10.90, ("He", "Nb"): 14.11, ("Sk", "Nb"): 13.14}
    after = {("Ar", "Nb"): 13.92, ("He", "Nb"): 17.64, ("Sk", "Nb"): 16.00}
    assert average_improvement(before, after) == pytest.approx(9.41 / 3, abs=1e-12)


def test_average_improvement_no_change():
    d = {("a", "b"): 3.0, ("b", "a"): 4.0}
    assert average_improvement(d, dict(d)) == 0.0


def test_average_improvement_key_mismatch():
    with pytest.raises(AlignmentError):
        average_improvement({("a", "b"): 1.0}, {("b", "a"): 1.0})
    with pytest.raises(EmptyInput):
        average_improvement({}, {})


@given(st.lists(st.tuples(st.floats(0, 100), st.floats(0, 100)), min_size=1, max_size=20))
def test_average_improvement_matches_mean(vals):
    before = {(f"x{i}", "y"): b for i, (b, _) in enumerate(vals)}
    after = {(f"x{i}", "y"): a for i, (_, a) in enumerate(vals)}
    expected = sum(a - b for b, a in vals) / len(vals)
    assert average_improvement(before, after) == pytest.approx(expected, abs=1e-9)


@given(
    st.lists(st.tuples(st.floats(0, 50), st.floats(-10, 10)), min_size=1, max_size=20),
    st.floats(-5, 5),
)
def test_average_improvement_linear(vals, c):
    before = {(f"x{i}", "y"): b for i, (b, _) in enumerate(vals)}
    after = {(f"x{i}", "y"): b + d for i, (b, d) in enumerate(vals)}
    scaled = {(f"x{i}", "y"): b + c * d for i, (b, d) in enumerate(vals)}
    assert average_improvement(before, scaled) == pytest.approx(c * average_improvement(before, after), abs=1e-6)


def test_orders_without_ngrams_are_vacuous():
    assert bleu(["a", "b"], ["a", "b"]).score == 100.0
    b = bleu(["a b"], ["a c"])
    assert b.precisions[:2] == (0.5, 0.0)
    assert b.score == 0.0
