"""Language-graph distillation for low-resource translation.

Build a directed graph of languages, measure how well every multi-hop
translation path performs, pick the edges that pivot paths beat by the
widest margin, and improve them with pseudo-parallel data generated along
those paths.
"""

__version__ = "0.1.0"

from .corpus import MonoCorpus, MultiParallelSet, ParallelCorpus
from .distillation import (
    DistillationPlan,
    PotentialScore,
    assemble_training_set,
    backward_distill,
    forward_distill,
    potential,
    select_edges,
    select_paths,
)
from .graph import LanguageGraph, objective, ted9_graph
from .metrics import BleuScore, average_improvement, bleu
from .orchestrator import IterationReport, RunConfig, compare_modes, iteration_step, run
from .pathtable import AccuracyTable, TranslationPath, build_accuracy_table, enumerate_paths, evaluate_path
from .translator import (
    Lexicon,
    MultilingualModel,
    TrainerConfig,
    ibm1_em,
    pipeline_translate,
    train_multilingual,
    translate,
)
from .world import ConceptWorld, WorldConfig, generate_corpora, generate_world
