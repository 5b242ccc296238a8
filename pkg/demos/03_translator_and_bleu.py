"""Word-level translation with IBM Model 1, scored with corpus BLEU.

With plenty of clean bitext EM recovers the lexicon almost perfectly; with
a starved corpus many words stay ambiguous and BLEU drops.
"""

from lgdistill.corpus import ParallelCorpus
from lgdistill.metrics import bleu
from lgdistill.translator import train_multilingual, translate
from lgdistill.world import WorldConfig, derive_rng, generate_world

world = generate_world(WorldConfig(("en", "fr"), concept_count=150), seed=3)
test = world.sample_concepts(derive_rng(3, "test"), 300)
src = [world.render(s, "en") for s in test]
ref = [world.render(s, "fr") for s in test]

for n in (20, 100, 500, 3000):
    seqs = world.sample_concepts(derive_rng(3, "train"), n)
    corpus = ParallelCorpus("en", "fr", [(world.render(s, "en"), world.render(s, "fr")) for s in seqs])
    model = train_multilingual({("en", "fr"): corpus})
    lex = model.directions[("en", "fr")].argmax_map()
    correct = sum(world.ground_truth(w, "en", "fr") == t for w, t in lex.items())
    score = bleu(translate(model, "en", "fr", src), ref)
    print(f"{n:5d} pairs: {correct:3d}/{len(lex):3d} words right, {score}")
