"""The full loop on the desk-scale five-language world.

Compares four settings that start from the same initial model: no extra
data, plain back-translation, forward distillation only, and forward plus
backward distillation along the graph. Takes roughly ten seconds.
"""

from pathlib import Path

from lgdistill.config import load_config
from lgdistill.orchestrator import compare_modes
from lgdistill.report import render_table
from lgdistill.world import generate_corpora, generate_world

cfg = load_config(Path(__file__).parent.parent / "configs" / "desk5.yaml", environ={})
world = generate_world(cfg.world, cfg.seed)
corpora, mono, dev, test = generate_corpora(world, cfg.graph, cfg.dev_size, cfg.test_size, cfg.seed)

cmp = compare_modes(cfg.graph, corpora, mono, dev, cfg.run, cfg.trainer, test)
print(render_table(cmp.rows))

for rep in cmp.runs["graph"]:
    if not rep.selected:
        print(f"T={rep.T}: no edge has positive potential, stopping")
        continue
    print(f"T={rep.T}: sigma {rep.sigma:+.2f} on dev")
    for sel in rep.selected:
        fwd = ", ".join(p["path"] for p in sel["forward_paths"])
        bwd = ", ".join(p["path"] for p in sel["backward_paths"])
        print(f"  {'->'.join(sel['edge'])}: forward [{fwd}] backward [{bwd}] -> {sel['training_pairs']}")
