import sys
from dataclasses import replace
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lgdistill.graph import LanguageGraph
from lgdistill.world import WorldConfig, generate_corpora, generate_world

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def tri_graph():
    g = LanguageGraph()
    for code in ("aa", "bb", "cc"):
        g.add_language(code)
    return g


def desk5_graph(starved=40, rich=3000, mono=1000):
    g = LanguageGraph()
    for code in ("src", "tgt", "pa", "pb", "pc"):
        g.add_language(code, mono)
    g.add_pair("src", "tgt", starved)
    for a, b in [("src", "pa"), ("pa", "tgt"), ("src", "pb"), ("pb", "tgt"), ("pa", "pc"), ("pc", "tgt")]:
        g.add_pair(a, b, rich)
    return g


def small_setup(seed=11, starved=20, rich=400, mono=150, concepts=60, dev=120, test=120):
    """A cheap 4-language world: starved s<->t and a rich pivot p, plus q."""
    g = LanguageGraph()
    for code in ("ss", "tt", "pp", "qq"):
        g.add_language(code, mono)
    g.add_pair("ss", "tt", starved)
    g.add_pair("ss", "pp", rich)
    g.add_pair("pp", "tt", rich)
    g.add_pair("qq", "pp", rich)
    world = generate_world(WorldConfig(tuple(g.languages()), concept_count=concepts), seed)
    corpora, mono_c, dev_s, test_s = generate_corpora(world, g, dev, test, seed)
    return g, world, corpora, mono_c, dev_s, test_s


@pytest.fixture(scope="session")
def small_world():
    return small_setup()


CONFIG_DIR = Path(__file__).parent.parent / "configs"
STARVED = [("src", "tgt"), ("tgt", "src")]


def desk5_scores(max_iterations=2):
    """Final test BLEU on the starved edges, per mode, for the shipped desk5 config."""
    from lgdistill.config import load_config
    from lgdistill.orchestrator import compare_modes, score_after

    cfg = load_config(CONFIG_DIR / "desk5.yaml", environ={})
    world = generate_world(cfg.world, cfg.seed)
    corpora, mono, dev, test = generate_corpora(world, cfg.graph, cfg.dev_size, cfg.test_size, cfg.seed)
    run_cfg = replace(cfg.run, max_iterations=max_iterations)
    cmp = compare_modes(cfg.graph, corpora, mono, dev, run_cfg, cfg.trainer, test)
    out = {}
    for s, t in STARVED:
        e = (s, t)
        row = {"initial": cmp.initial[e]}
        for mode, reports in cmp.runs.items():
            row[mode] = score_after(reports, max_iterations, e, cmp.initial)
        out[f"{s}->{t}"] = row
    return out, cmp
