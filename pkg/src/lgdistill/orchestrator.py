"""The distillation loop over the language graph.

Each iteration measures every path of up to H hops on the dev set, picks the
edges whose multi-hop paths beat them by the widest margin, generates
pseudo-parallel data for those edges along their best forward and backward
paths, retrains just those directions, and measures the gain. The loop stops
once the average gain of an iteration drops to ``tau`` or below, when no edge
has positive potential, or after ``max_iterations``.
"""

from __future__ import annotations

import math
import time
from typing import NamedTuple
from dataclasses import asdict, dataclass, field, replace

from .corpus import ParallelCorpus
from .distillation import (
    DEFAULT_BUDGET,
    assemble_training_set,
    backward_distill,
    forward_distill,
    pool_sentences,
    potential,
    provenance_counts,
    select_edges,
    select_paths,
)
from .errors import InvalidConfig, LGDError, RunAborted
from .metrics import average_improvement
from .pathtable import AccuracyTable, build_accuracy_table, evaluate_path
from .translator import TrainerConfig, pair_weights, train_multilingual

MODES = ("graph", "forward", "bt")


@dataclass(frozen=True)
class RunConfig:
    tau: float = 0.1
    H: int = 2
    M: int = 3
    K: int = 2
    delta: float = 0.0
    max_iterations: int = 10
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    aggregation: str = "max"
    # graph: forward + backward paths; forward: forward only;
    # bt: the 1-hop reverse edge only (plain back-translation)
    mode: str = "graph"

    def validate(self) -> "RunConfig":
        if self.tau < 0:
            raise InvalidConfig(f"run.tau must be >= 0, got {self.tau}")
        for name in ("H", "M", "K", "max_iterations", "budget"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise InvalidConfig(f"run.{name} must be a positive int, got {v!r}")
        if self.delta < 0:
            raise InvalidConfig(f"run.delta must be >= 0, got {self.delta}")
        if self.aggregation not in ("max", "mean-top-k"):
            raise InvalidConfig(f"run.aggregation must be 'max' or 'mean-top-k', got {self.aggregation!r}")
        if self.mode not in MODES:
            raise InvalidConfig(f"run.mode must be one of {MODES}, got {self.mode!r}")
        return self

    def path_options(self) -> dict:
        if self.mode == "bt":
            return {"K": 1, "forward": False, "backward": True, "backward_H": 1}
        if self.mode == "forward":
            return {"K": self.K, "forward": True, "backward": False}
        return {"K": self.K, "forward": True, "backward": True}


@dataclass
class IterationReport:
    T: int
    selected: list = field(default_factory=list)
    before: dict = field(default_factory=dict)
    after: dict = field(default_factory=dict)
    sigma: float = 0.0
    table_snapshot: dict = field(default_factory=dict)
    test_scores: dict = field(default_factory=dict)
    wall_time: float = 0.0
    table: AccuracyTable | None = None

    @property
    def edges(self) -> list:
        return [tuple(s["edge"]) for s in self.selected]

    def to_dict(self) -> dict:
        """Machine-readable form; wall time is kept out so reruns compare byte-for-byte."""
        return {
            "T": self.T,
            "sigma": self.sigma,
            "selected": self.selected,
            "before": _edge_map(self.before),
            "after": _edge_map(self.after),
            "table_snapshot": _edge_map(self.table_snapshot),
            "test_scores": _edge_map(self.test_scores),
        }


def _edge_map(d):
    return {f"{s}->{t}": v for (s, t), v in sorted(d.items())}


def parse_edge_map(d):
    return {tuple(k.split("->")): v for k, v in d.items()}


class RunResult(NamedTuple):
    model: object
    reports: list
    corpora: dict


@dataclass
class RunState:
    graph: object
    model: object
    corpora: dict
    mono: dict
    devset: object
    test: object = None
    T: int = 0


def default_trainer(corpora, trainer_config, reference_mass=None):
    return train_multilingual(corpora, trainer_config, reference_mass)


def _reference_mass(corpora, trainer_config):
    masses = [math.fsum(pair_weights(c, trainer_config)) for c in corpora.values() if len(c)]
    return max(masses) if masses else None


def train_initial(corpora, trainer_config=TrainerConfig(), trainer=default_trainer):
    """theta_0: every direction trained on its real bitext."""
    real = {e: c for e, c in corpora.items() if len(c)}
    return trainer(real, trainer_config, _reference_mass(real, trainer_config))


def edge_scores(graph, model, evalset) -> dict:
    """1-hop BLEU of every graph edge the model can translate."""
    return {
        e: evaluate_path(e, model, evalset)
        for e in graph.sorted_edges()
        if model.has_direction(*e)
    }


def iteration_step(state: RunState, config: RunConfig, trainer_config=TrainerConfig(), trainer=default_trainer):
    """One pass of the loop body. Returns the new state and its report."""
    t0 = time.perf_counter()
    T = state.T + 1
    table = build_accuracy_table(state.graph, state.model, state.devset, config.H, T)
    agg_k = config.K
    chosen = select_edges(table, config.M, config.H, config.aggregation, agg_k)
    report = IterationReport(T=T, table_snapshot=table.weights(), table=table)
    if not chosen:
        if state.test is not None:
            report.test_scores = edge_scores(state.graph, state.model, state.test)
        report.wall_time = time.perf_counter() - t0
        return replace(state, T=T), report

    opts = config.path_options()
    corpora = dict(state.corpora)
    for edge in chosen:
        src, tgt = edge
        pot = potential(table, edge, config.H, config.aggregation, agg_k)
        plan = select_paths(table, edge, delta=config.delta, H=config.H, budget=config.budget, **opts)
        real = corpora.get(edge) or ParallelCorpus(src, tgt)
        sources = pool_sentences(state.mono.get(src), real, "source", plan.budget)
        targets = pool_sentences(state.mono.get(tgt), real, "target", plan.budget)
        fwd = forward_distill(plan, state.model, sources)
        bwd = backward_distill(plan, state.model, targets)
        corpora[edge] = assemble_training_set(real, [fwd, bwd])
        report.selected.append(
            {
                "edge": [src, tgt],
                "potential": pot.potential,
                "best_path": str(pot.best_path),
                "forward_paths": [{"path": str(p), "score": s} for p, s in zip(plan.forward_paths, plan.forward_scores)],
                "backward_paths": [{"path": str(p), "score": s} for p, s in zip(plan.backward_paths, plan.backward_scores)],
                "pseudo_forward": len(fwd),
                "pseudo_backward": len(bwd),
                "training_pairs": provenance_counts(corpora[edge]),
            }
        )

    retrain = {e: corpora[e] for e in chosen}
    new = trainer(retrain, trainer_config, _reference_mass(corpora, trainer_config))
    model = state.model.updated(new)

    report.before = {e: table.direct(*e) for e in chosen}
    report.after = {e: evaluate_path(e, model, state.devset) for e in chosen}
    report.sigma = average_improvement(report.before, report.after)
    if state.test is not None:
        report.test_scores = edge_scores(state.graph, model, state.test)
    report.wall_time = time.perf_counter() - t0
    return replace(state, model=model, corpora=corpora, T=T), report


def run(
    graph,
    corpora,
    mono,
    devset,
    config: RunConfig = RunConfig(),
    trainer_config: TrainerConfig = TrainerConfig(),
    test=None,
    model=None,
    trainer=default_trainer,
):
    """Run the loop to convergence.

    Returns a :class:`RunResult` of the final model, the per-iteration
    reports and the training corpora including accumulated pseudo pairs.

    ``model`` may carry a pre-trained theta_0 so several runs can share one
    starting point; otherwise it is trained on the real bitext.
    """
    config.validate()
    trainer_config.validate()
    graph.validate()
    if not any(len(c) for c in corpora.values()):
        raise InvalidConfig("no bilingual data to train on")
    if model is None:
        model = train_initial(corpora, trainer_config, trainer)
    state = RunState(graph, model, dict(corpora), dict(mono), devset, test)

    reports = []
    sigma = math.inf
    while sigma > config.tau and state.T < config.max_iterations:
        try:
            state, report = iteration_step(state, config, trainer_config, trainer)
        except LGDError as exc:
            raise RunAborted(f"iteration {state.T + 1} failed: {exc}", reports) from exc
        reports.append(report)
        if not report.selected:
            break
        sigma = report.sigma
    return RunResult(state.model, reports, state.corpora)


@dataclass
class Comparison:
    initial: dict
    runs: dict
    rows: list

    def column(self, mode: str) -> dict:
        return {(r["T"], tuple(r["edge"])): r[mode] for r in self.rows}


def score_after(reports, T, edge, initial):
    """Test score of ``edge`` once a run has completed iteration T (or stopped earlier)."""
    done = [r for r in reports if r.T <= T and r.test_scores]
    if not done:
        return initial[edge]
    return done[-1].test_scores.get(edge, initial[edge])


def compare_modes(graph, corpora, mono, devset, config=RunConfig(), trainer_config=TrainerConfig(), test=None, trainer=default_trainer):
    """Initial / +BT / +Forward / +Graph from one shared theta_0.

    Rows are the edges the graph run selected at each iteration; every
    column reports that mode's score on the evaluation set (test if given,
    else dev) after the same iteration.
    """
    evalset = test if test is not None else devset
    theta0 = train_initial(corpora, trainer_config, trainer)
    initial = edge_scores(graph, theta0, evalset)
    runs = {}
    for mode in ("bt", "forward", "graph"):
        _, reports, _ = run(graph, corpora, mono, devset, replace(config, mode=mode), trainer_config, evalset, theta0, trainer)
        runs[mode] = reports
    rows = []
    for rep in runs["graph"]:
        for edge in rep.edges:
            rows.append(
                {
                    "T": rep.T,
                    "edge": list(edge),
                    "initial": initial[edge],
                    "bt": score_after(runs["bt"], rep.T, edge, initial),
                    "forward": score_after(runs["forward"], rep.T, edge, initial),
                    "graph": score_after(runs["graph"], rep.T, edge, initial),
                }
            )
    return Comparison(initial, runs, rows)


def config_dict(config) -> dict:
    return asdict(config)
