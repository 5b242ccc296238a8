"""A synthetic world: every language renders the same concept sequences.

Each language's lexicon is a seeded bijection over concepts, so the ground
truth translation of any sentence is known exactly. One language reverses
word order in blocks of three, which a word-for-word model cannot undo.
"""

from lgdistill.graph import LanguageGraph
from lgdistill.world import WorldConfig, derive_rng, generate_corpora, generate_world

cfg = WorldConfig(("en", "de", "ja"), concept_count=200, reorder={"ja": 3})
world = generate_world(cfg, seed=5)

seq = world.sample_concepts(derive_rng(5, "demo"), 1)[0]
print("concepts:", seq)
for lang in cfg.languages:
    print(f"  {lang}: {world.render(seq, lang)}")
print("ja -> en ground truth:", world.ground_truth(world.render(seq, "ja"), "ja", "en"))

g = LanguageGraph()
for v in cfg.languages:
    g.add_language(v, mono=300)
g.add_pair("en", "de", 500).add_pair("en", "ja", 50)
corpora, mono, dev, test = generate_corpora(world, g, dev_size=100, test_size=100, seed=5)
for (s, t), c in sorted(corpora.items()):
    print(f"{s}->{t}: {len(c)} pairs, first: {c.pairs[0][0]!r} => {c.pairs[0][1]!r}")
print(f"dev set: {len(dev)} lines in {', '.join(dev.languages)}")
