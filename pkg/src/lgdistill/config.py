"""Experiment configuration: one YAML document, optionally overridden by env vars.

Scalar fields can be overridden with ``LGD_<FIELD>`` for top-level keys and
``LGD_<SECTION>__<FIELD>`` for nested ones, e.g. ``LGD_SEED=7`` or
``LGD_RUN__TAU=0.5``. Values are parsed as YAML scalars.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import yaml

from .errors import InvalidConfig
from .graph import LanguageGraph, load_graph
from .orchestrator import RunConfig
from .translator import TrainerConfig
from .world import WorldConfig

ENV_PREFIX = "LGD_"
SECTIONS = ("world", "trainer", "run", "backend")


@dataclass
class ExperimentConfig:
    seed: int
    graph: LanguageGraph
    world: WorldConfig
    data_dir: Path
    out_dir: Path
    dev_size: int = 500
    test_size: int = 500
    trainer: TrainerConfig = field(default_factory=TrainerConfig)
    run: RunConfig = field(default_factory=RunConfig)
    backend: dict = field(default_factory=dict)


def _section(cls, data, name):
    data = dict(data or {})
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise InvalidConfig(f"{name}: unknown field(s) {unknown}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise InvalidConfig(f"{name}: {exc}") from None


def apply_env(doc: dict, environ=None) -> dict:
    environ = os.environ if environ is None else environ
    doc = {k: (dict(v) if isinstance(v, dict) else v) for k, v in doc.items()}
    for key, raw in sorted(environ.items()):
        if not key.startswith(ENV_PREFIX) or key.startswith(ENV_PREFIX + "BACKEND_"):
            continue
        name = key[len(ENV_PREFIX):].lower()
        value = yaml.safe_load(raw)
        if "__" in name:
            section, sub = name.split("__", 1)
            if section not in SECTIONS:
                raise InvalidConfig(f"{key}: unknown section {section!r}")
            doc.setdefault(section, {})
            doc[section] = dict(doc[section] or {})
            doc[section][sub] = value
        else:
            doc[name] = value
    return doc


def load_config(path, environ=None) -> ExperimentConfig:
    path = Path(path)
    if not path.exists():
        raise InvalidConfig(f"config file {path} does not exist")
    with open(path, encoding="utf-8") as fh:
        doc = yaml.safe_load(fh) or {}
    if not isinstance(doc, dict):
        raise InvalidConfig(f"{path}: top level must be a mapping")
    return config_from_dict(apply_env(doc, environ), base=path.parent)


def config_from_dict(doc: dict, base=Path(".")) -> ExperimentConfig:
    base = Path(base)
    allowed = {"seed", "graph", "graph_file", "world", "data_dir", "out_dir", "dev_size", "test_size", *SECTIONS}
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise InvalidConfig(f"unknown top-level field(s) {unknown}")
    if "seed" not in doc:
        raise InvalidConfig("seed: required")
    seed = doc["seed"]
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise InvalidConfig(f"seed: must be an integer, got {seed!r}")

    if "graph_file" in doc:
        graph = load_graph(base / doc["graph_file"])
    elif "graph" in doc:
        graph = LanguageGraph.from_dict(doc["graph"])
    else:
        raise InvalidConfig("graph: either 'graph' or 'graph_file' is required")

    world_doc = dict(doc.get("world") or {})
    if "languages" in world_doc:
        raise InvalidConfig("world.languages: taken from the graph, do not set it")
    world_doc["languages"] = tuple(graph.languages())
    if "sentence_len" in world_doc:
        world_doc["sentence_len"] = tuple(world_doc["sentence_len"])
    world = _section(WorldConfig, world_doc, "world").validate()

    trainer = _section(TrainerConfig, doc.get("trainer"), "trainer").validate()
    run_doc = dict(doc.get("run") or {})
    run_doc.setdefault("seed", seed)
    run = _section(RunConfig, run_doc, "run").validate()

    for name in ("dev_size", "test_size"):
        v = doc.get(name, 500)
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise InvalidConfig(f"{name}: must be a positive int, got {v!r}")

    return ExperimentConfig(
        seed=seed,
        graph=graph,
        world=world,
        data_dir=base / doc.get("data_dir", "data"),
        out_dir=base / doc.get("out_dir", "runs"),
        dev_size=doc.get("dev_size", 500),
        test_size=doc.get("test_size", 500),
        trainer=trainer,
        run=run,
        backend=dict(doc.get("backend") or {}),
    )


def with_overrides(cfg: ExperimentConfig, **run_fields) -> ExperimentConfig:
    """Apply non-None CLI overrides to the run section (and seed)."""
    run_fields = {k: v for k, v in run_fields.items() if v is not None}
    seed = run_fields.pop("seed", None)
    out = run_fields.pop("out_dir", None)
    run = replace(cfg.run, **run_fields)
    if seed is not None:
        run = replace(run, seed=seed)
        cfg = replace(cfg, seed=seed)
    if out is not None:
        cfg = replace(cfg, out_dir=Path(out))
    return replace(cfg, run=run.validate())
