import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lgdistill.errors import InvalidConfig, UnknownLanguage
from lgdistill.graph import LanguageGraph
from lgdistill.pathtable import AccuracyTable, TranslationPath, build_accuracy_table, enumerate_paths, evaluate_path
from lgdistill.translator import Lexicon, MultilingualModel, oracle_model
from lgdistill.world import WorldConfig, derive_rng, generate_world
from oracles import brute_force_paths


def complete(nodes):
    g = LanguageGraph()
    for v in nodes:
        g.add_language(v)
    for a in nodes:
        for b in nodes:
            if a != b:
                g.add_edge(a, b, 1)
    return g


def test_h1_is_the_direct_edge(tri_graph):
    tri_graph.add_edge("aa", "bb", 1).add_edge("aa", "cc", 1).add_edge("cc", "bb", 1)
    assert enumerate_paths(tri_graph, "aa", "bb", 1) == [TranslationPath(("aa", "bb"))]


def test_h1_without_edge_is_empty(tri_graph):
    tri_graph.add_edge("aa", "cc", 1).add_edge("cc", "bb", 1)
    assert enumerate_paths(tri_graph, "aa", "bb", 1) == []


def test_complete_digraph_counts():
    g = complete(["ss", "aa", "bb", "tt"])
    assert len(enumerate_paths(g, "ss", "tt", 2)) == 3
    paths = enumerate_paths(g, "ss", "tt", 3)
    assert len(paths) == 5
    assert [p.hops for p in paths] == [1, 2, 2, 3, 3]
    assert str(paths[0]) == "ss->tt"


def test_no_repeated_languages():
    for p in enumerate_paths(complete(["aa", "bb", "cc", "dd", "ee"]), "aa", "ee", 4):
        assert len(set(p.langs)) == len(p.langs)


def test_invalid_arguments(tri_graph):
    with pytest.raises(InvalidConfig):
        enumerate_paths(tri_graph, "aa", "bb", 0)
    with pytest.raises(UnknownLanguage):
        enumerate_paths(tri_graph, "aa", "zz", 2)
    with pytest.raises(InvalidConfig):
        TranslationPath(("aa", "bb", "aa"))


@given(st.integers(2, 6), st.integers(0, 10_000), st.integers(1, 3))
@settings(max_examples=80, deadline=None)
def test_matches_brute_force(n, seed, H):
    rng = random.Random(seed)
    nodes = [f"n{i}" for i in range(n)]
    g = LanguageGraph()
    for v in nodes:
        g.add_language(v)
    for a in nodes:
        for b in nodes:
            if a != b and rng.random() < 0.5:
                g.add_edge(a, b, 1)
    for s in nodes:
        for t in nodes:
            if s != t:
                got = [p.langs for p in enumerate_paths(g, s, t, H)]
                assert len(got) == len(set(got))
                assert set(got) == brute_force_paths(nodes, g.edge_data, s, t, H)


@pytest.fixture(scope="module")
def world3():
    w = generate_world(WorldConfig(("aa", "bb", "cc"), concept_count=40), 2)
    dev = w.multiparallel(w.sample_concepts(derive_rng(2, "dev"), 60))
    return w, dev


def test_oracle_path_scores_100(world3):
    w, dev = world3
    model = oracle_model(w, [("aa", "bb"), ("bb", "cc"), ("aa", "cc")])
    assert evaluate_path(("aa", "bb", "cc"), model, dev) == 100.0
    assert evaluate_path(TranslationPath(("aa", "cc")), model, dev) == 100.0


def test_degraded_hop_scores_below_direct(world3):
    w, dev = world3
    model = oracle_model(w, [("aa", "bb"), ("aa", "cc")])
    half = {b: c for i, (b, c) in enumerate(zip(w.lexicons["bb"], w.lexicons["cc"])) if i % 2 == 0}
    model = model.updated(MultilingualModel({("bb", "cc"): Lexicon.from_mapping(half)}))
    assert evaluate_path(("aa", "bb", "cc"), model, dev) < evaluate_path(("aa", "cc"), model, dev)


def test_table_entries_and_iteration(world3):
    w, dev = world3
    g = complete(["aa", "bb", "cc"])
    model = oracle_model(w, sorted(g.edge_data))
    table = build_accuracy_table(g, model, dev, H=2, iteration=4)
    # 6 direct edges + for each ordered pair one 2-hop path via the third node
    assert len(table) == 12
    assert len(table.hop_table(1)) == 6 and len(table.hop_table(2)) == 6
    assert table.iteration == 4
    assert set(table.weights()) == set(g.edge_data)
    assert table.score(("aa", "bb", "cc")) == 100.0
    assert table.paths("aa", "cc", 2) == [(("aa", "bb", "cc"), 100.0)]


def test_table_skips_untrained_edges(world3):
    w, dev = world3
    g = complete(["aa", "bb", "cc"])
    model = oracle_model(w, [("aa", "bb"), ("bb", "cc")])
    table = build_accuracy_table(g, model, dev, H=2)
    assert set(langs for _, langs in table.entries) == {("aa", "bb"), ("bb", "cc"), ("aa", "bb", "cc")}


def test_table_is_deterministic(small_world):
    from lgdistill.orchestrator import train_initial

    g, _, corpora, _, dev, _ = small_world
    model = train_initial(corpora)
    a = build_accuracy_table(g, model, dev, 2, 1)
    b = build_accuracy_table(g, model, dev, 2, 1)
    assert a.to_dict() == b.to_dict()


def test_export_and_round_trip(tmp_path, world3):
    w, dev = world3
    g = complete(["aa", "bb", "cc"])
    table = build_accuracy_table(g, oracle_model(w, sorted(g.edge_data)), dev, 2, 3)
    tsv, js = table.export(tmp_path)
    assert tsv.name == "table_T3.tsv"
    lines = tsv.read_text().splitlines()
    assert lines[0] == "path\thops\tscore\titeration"
    assert len(lines) == 13 and lines[1].endswith("\t3")
    loaded = AccuracyTable.from_dict(json.loads(js.read_text()))
    assert loaded.entries == table.entries and loaded.iteration == 3
