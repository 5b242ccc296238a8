"""Measuring multi-hop paths and finding the edges worth distilling.

The starved edge ss->tt is weak on its own, but the pivot route ss->pp->tt
is trained on rich bitext. The accuracy table measures every path on a
shared dev set. An edge's potential is how far its best pivot path beats it.
"""

from lgdistill.distillation import all_potentials, select_edges, select_paths
from lgdistill.graph import LanguageGraph
from lgdistill.orchestrator import train_initial
from lgdistill.pathtable import build_accuracy_table, enumerate_paths
from lgdistill.world import WorldConfig, generate_corpora, generate_world

g = LanguageGraph()
for v in ("ss", "tt", "pp", "qq"):
    g.add_language(v, mono=200)
g.add_pair("ss", "tt", 25).add_pair("ss", "pp", 800).add_pair("pp", "tt", 800).add_pair("qq", "pp", 800)

world = generate_world(WorldConfig(tuple(g.languages()), concept_count=80), seed=21)
corpora, mono, dev, test = generate_corpora(world, g, 200, 200, seed=21)
model = train_initial(corpora)

print("paths ss -> tt with up to 3 hops:", [str(p) for p in enumerate_paths(g, "ss", "tt", 3)])
table = build_accuracy_table(g, model, dev, H=2, iteration=1)
for langs, score in table.paths("ss", "tt"):
    print(f"  {'->'.join(langs):<12} BLEU {score:6.2f}")

print("\npotentials (best 2-hop path minus direct):")
for p in sorted(all_potentials(table, H=2), key=lambda p: -p.potential):
    print(f"  {p.edge[0]}->{p.edge[1]}: direct {p.direct:6.2f}  best {p.best_path}  potential {p.potential:+.2f}")

chosen = select_edges(table, M=2, H=2)
print("\nselected edges:", chosen)
plan = select_paths(table, chosen[0], K=2, delta=0.0, H=2)
print("forward paths:", [str(p) for p in plan.forward_paths], "backward paths:", [str(p) for p in plan.backward_paths])
