import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lgdistill.corpus import ParallelCorpus
from lgdistill.errors import InvalidConfig, InvalidGraph, UnknownConcept
from lgdistill.graph import LanguageGraph
from lgdistill.metrics import bleu
from lgdistill.world import ConceptWorld, WorldConfig, derive_rng, generate_corpora, generate_world

LANGS = ("aa", "bb", "cc")


def world(concepts=50, seed=3, **kw):
    return generate_world(WorldConfig(LANGS, concept_count=concepts, **kw), seed)


def test_single_concept_world():
    w = world(concepts=1)
    for lang in LANGS:
        assert w.lexicons[lang] == [f"{lang}_0"]
    seqs = w.sample_concepts(derive_rng(0, "x"), 5)
    for seq in seqs:
        assert set(w.render(seq, "aa").split()) == {"aa_0"}


def test_same_seed_same_world():
    assert world(seed=9).manifest() == world(seed=9).manifest()


def test_different_seeds_differ():
    a = generate_world(WorldConfig(LANGS, concept_count=500), 1)
    b = generate_world(WorldConfig(LANGS, concept_count=500), 2)
    assert any(a.lexicons[l][c] != b.lexicons[l][c] for l in LANGS for c in range(500))


def test_lexicons_are_bijections():
    w = world(concepts=200)
    for lang in LANGS:
        words = w.lexicons[lang]
        assert len(words) == 200 and len(set(words)) == 200
        assert all(word.startswith(f"{lang}_") for word in words)
    assert not set(w.lexicons["aa"]) & set(w.lexicons["bb"])


@pytest.mark.parametrize(
    "cfg",
    [
        dict(concept_count=0),
        dict(sentence_len=(0, 3)),
        dict(sentence_len=(5, 4)),
        dict(zipf_exponent=-1.0),
        dict(reorder={"zz": 2}),
        dict(reorder={"aa": 1}),
    ],
)
def test_invalid_config(cfg):
    with pytest.raises(InvalidConfig):
        generate_world(WorldConfig(LANGS, **cfg), 0)


def test_render_empty_and_single():
    w = world()
    assert w.render([], "aa") == ""
    a, b = w.render([7], "aa"), w.render([7], "bb")
    assert len(a.split()) == len(b.split()) == 1
    # related by the composed bijection
    assert w.lexicons["bb"][w.lexicons["aa"].index(a)] == b


def test_render_unknown_concept():
    with pytest.raises(UnknownConcept):
        world().render([50], "aa")


@given(st.lists(st.integers(0, 49), max_size=30), st.sampled_from(LANGS))
def test_render_invert_round_trip(seq, lang):
    w = world()
    inverse = {word: c for c, word in enumerate(w.lexicons[lang])}
    assert tuple(inverse[x] for x in w.render(seq, lang).split()) == tuple(seq)
    assert w.invert(w.render(seq, lang), lang) == tuple(seq)


def test_reordered_language_round_trip():
    w = world(reorder={"bb": 3})
    seq = [1, 2, 3, 4, 5, 6, 7]
    rendered = w.render(seq, "bb").split()
    plain = [w.lexicons["bb"][c] for c in seq]
    assert rendered == plain[2::-1] + plain[5:2:-1] + plain[6:]
    assert w.invert(" ".join(rendered), "bb") == tuple(seq)


def test_rendering_is_deterministic():
    w = world()
    assert w.render([3, 1, 4], "cc") == w.render([3, 1, 4], "cc")


def test_uniform_concepts_when_exponent_zero():
    w = generate_world(WorldConfig(LANGS, concept_count=40, zipf_exponent=0.0, sentence_len=(10, 10)), 5)
    n_sent = 8000
    counts = Counter(c for seq in w.sample_concepts(derive_rng(5, "zipf"), n_sent) for c in seq)
    n = n_sent * 10
    p = 1 / 40
    sigma = math.sqrt(n * p * (1 - p))
    for c in range(40):
        assert abs(counts[c] - n * p) <= 3 * sigma


def test_zipf_skew():
    w = generate_world(WorldConfig(LANGS, concept_count=40, zipf_exponent=1.0), 5)
    counts = Counter(c for seq in w.sample_concepts(derive_rng(5, "z"), 3000) for c in seq)
    assert counts[0] > 5 * counts[39]


def test_sentence_lengths_in_range():
    w = world(sentence_len=(2, 5))
    lens = {len(s) for s in w.sample_concepts(derive_rng(1, "l"), 500)}
    assert lens == {2, 3, 4, 5}


@pytest.fixture
def graph3():
    g = LanguageGraph()
    for code in LANGS:
        g.add_language(code, 30)
    g.add_pair("aa", "bb", 25)
    g.add_edge("bb", "cc", 10)
    g.add_edge("cc", "bb", 0)
    return g


def test_generate_corpora_sizes(graph3):
    w = world()
    corpora, mono, dev, test = generate_corpora(w, graph3, 40, 30, seed=4)
    assert len(corpora[("aa", "bb")]) == 25
    assert len(corpora[("bb", "cc")]) == 10
    assert len(corpora[("cc", "bb")]) == 0
    assert all(len(m) == 30 for m in mono.values())
    assert dev.languages == list(LANGS) and len(dev) == 40
    assert all(len(dev.lines(l)) == 40 for l in LANGS)
    assert len(test) == 30


def test_generated_pairs_match_ground_truth(graph3):
    w = world()
    corpora, *_ = generate_corpora(w, graph3, 10, 10, seed=4)
    for (s, t), corpus in corpora.items():
        for src, tgt in corpus.pairs:
            assert tgt == w.render(w.invert(src, s), t)


def test_reverse_directions_share_bitext(graph3):
    corpora, *_ = generate_corpora(world(), graph3, 10, 10, seed=4)
    assert corpora[("bb", "aa")].pairs == corpora[("aa", "bb")].reversed().pairs


def test_multiparallel_lines_share_concepts(graph3):
    w = world()
    _, _, dev, _ = generate_corpora(w, graph3, 25, 10, seed=4)
    for i, seq in enumerate(dev.concepts):
        for lang in LANGS:
            assert dev.lines(lang)[i] == w.render(seq, lang)


def test_ground_truth_translation_scores_100(graph3):
    w = world()
    _, _, dev, _ = generate_corpora(w, graph3, 50, 10, seed=4)
    hyps = [w.ground_truth(s, "aa", "cc") for s in dev.lines("aa")]
    assert bleu(hyps, dev.lines("cc")).score == 100.0


def test_corpora_reproducible(graph3):
    a = generate_corpora(world(), graph3, 20, 20, seed=8)
    b = generate_corpora(world(), graph3, 20, 20, seed=8)
    assert a[0] == b[0] and a[1] == b[1]
    assert a[2].renderings == b[2].renderings and a[3].renderings == b[3].renderings


def test_dev_and_test_use_distinct_streams(graph3):
    _, _, dev, test = generate_corpora(world(concepts=300), graph3, 50, 50, seed=8)
    assert dev.lines("aa") != test.lines("aa")


def test_generate_corpora_rejects_foreign_graph():
    g = LanguageGraph().add_language("zz")
    with pytest.raises(InvalidGraph):
        generate_corpora(world(), g, 5, 5, seed=1)


def test_world_save_load(tmp_path):
    w = world(reorder={"aa": 2})
    w2 = ConceptWorld.load(w.save(tmp_path / "world.json"))
    assert w2.manifest() == w.manifest()
    assert w2.render([1, 2, 3], "aa") == w.render([1, 2, 3], "aa")


def test_derive_rng_is_stable():
    a = derive_rng(123, "bitext", "aa", "bb").integers(0, 1 << 30, size=5)
    b = derive_rng(123, "bitext", "aa", "bb").integers(0, 1 << 30, size=5)
    c = derive_rng(123, "bitext", "aa", "cc").integers(0, 1 << 30, size=5)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_parallel_corpus_rejects_empty_sentence():
    with pytest.raises(Exception):
        ParallelCorpus("aa", "bb", [("x", " ")])
