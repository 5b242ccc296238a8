"""Command line: ``lgdistill {gen,run,ingest,eval,report}``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict, replace
from pathlib import Path

from . import __version__
from .config import load_config, with_overrides
from .corpus import (
    MonoCorpus,
    ParallelCorpus,
    read_lines,
    read_multiparallel,
    read_parallel,
    read_parallel_files,
    write_lines,
    write_multiparallel,
    write_parallel,
)
from .errors import DataError, LGDError, UnknownLanguage
from .graph import dump_graph, load_graph
from .metrics import bleu
from .orchestrator import compare_modes, edge_scores, run, train_initial
from .report import initial_rows, load_rows, render_table, run_rows, write_results
from .translator import MultilingualModel, oracle_model
from .world import generate_corpora, generate_world

log = logging.getLogger("lgdistill")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_RUNTIME = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- data directory layout ----------------------------------------------------


def data_paths(data_dir) -> dict:
    d = Path(data_dir)
    return {
        "graph": d / "graph.yaml",
        "world": d / "world.json",
        "oracle": d / "oracle_model.json",
        "train": d / "train",
        "mono": d / "mono",
        "dev": d / "dev" / "dev",
        "test": d / "test" / "test",
    }


def load_data(data_dir):
    paths = data_paths(data_dir)
    if not paths["graph"].exists():
        raise DataError(f"data directory {data_dir} has no graph.yaml; run 'lgdistill gen' first")
    graph = load_graph(paths["graph"])
    corpora = {}
    for s, t in graph.sorted_edges():
        stem = paths["train"] / f"{s}-{t}"
        if Path(f"{stem}.{s}").exists():
            corpora[(s, t)] = read_parallel(paths["train"], s, t)
        elif graph.count(s, t):
            raise DataError(f"missing training files for {s}->{t} under {paths['train']}")
        else:
            corpora[(s, t)] = ParallelCorpus(s, t)
    mono = {}
    for v in graph.languages():
        p = paths["mono"] / f"{v}.txt"
        mono[v] = MonoCorpus(v, read_lines(p) if p.exists() else [])
    dev = read_multiparallel(paths["dev"], graph.languages())
    test = read_multiparallel(paths["test"], graph.languages())
    return graph, corpora, mono, dev, test


# -- commands -------------------------------------------------------------------


def cmd_gen(cfg) -> Path:
    world = generate_world(cfg.world, cfg.seed)
    corpora, mono, dev, test = generate_corpora(world, cfg.graph, cfg.dev_size, cfg.test_size, cfg.seed)
    paths = data_paths(cfg.data_dir)
    Path(cfg.data_dir).mkdir(parents=True, exist_ok=True)
    world.save(paths["world"])
    dump_graph(cfg.graph, paths["graph"])
    for corpus in corpora.values():
        if len(corpus):
            write_parallel(corpus, paths["train"])
    for v, m in mono.items():
        if len(m):
            write_lines(paths["mono"] / f"{v}.txt", m.sentences)
    write_multiparallel(dev, paths["dev"])
    write_multiparallel(test, paths["test"])
    oracle_model(world, cfg.graph.sorted_edges()).save(paths["oracle"])
    return Path(cfg.data_dir)


def cmd_run(cfg, mode: str, trainer=None) -> str:
    graph, corpora, mono, dev, test = load_data(cfg.data_dir)
    extra = {} if trainer is None else {"trainer": trainer}
    manifest = {
        "mode": mode,
        "seed": cfg.seed,
        "run": asdict(cfg.run),
        "trainer": asdict(cfg.trainer),
        "graph": graph.to_dict(),
        "dev_lines": len(dev),
        "test_lines": len(test),
        "path_accuracy": "measured on one shared multi-parallel dev set; reported scores on the test set",
    }
    if mode == "initial":
        model = train_initial(corpora, cfg.trainer, **extra)
        initial = edge_scores(graph, model, test)
        rows = initial_rows(initial)
        write_results(cfg.out_dir, manifest, initial, {}, rows, model)
    elif mode == "compare":
        cmp = compare_modes(graph, corpora, mono, dev, cfg.run, cfg.trainer, test, **extra)
        rows = cmp.rows
        write_results(cfg.out_dir, manifest, cmp.initial, cmp.runs, rows)
    else:
        theta0 = train_initial(corpora, cfg.trainer, **extra)
        initial = edge_scores(graph, theta0, test)
        result = run(graph, corpora, mono, dev, replace(cfg.run, mode=mode), cfg.trainer, test, theta0, **extra)
        rows = run_rows(initial, result.reports, mode)
        write_results(cfg.out_dir, manifest, initial, {mode: result.reports}, rows, result.model, result.corpora)
    return render_table(rows)


def cmd_ingest(src_file, tgt_file, src_lang, tgt_lang, data_dir, both=False) -> ParallelCorpus:
    paths = data_paths(data_dir)
    if not paths["graph"].exists():
        raise DataError(f"{paths['graph']} does not exist")
    graph = load_graph(paths["graph"])
    for lang in (src_lang, tgt_lang):
        if lang not in graph.nodes:
            raise UnknownLanguage(f"language {lang!r} is not declared in {paths['graph']}")
    corpus = read_parallel_files(src_file, tgt_file, src_lang, tgt_lang)
    for c in [corpus, corpus.reversed()] if both else [corpus]:
        write_parallel(c, paths["train"])
        graph.add_edge(c.src_lang, c.tgt_lang, len(c))
    dump_graph(graph, paths["graph"])
    return corpus


def cmd_export(data_dir, src_lang, tgt_lang, src_out, tgt_out):
    """Write one direction's corpus back out as two plain line-aligned files."""
    corpus = read_parallel(data_paths(data_dir)["train"], src_lang, tgt_lang)
    write_lines(src_out, corpus.sources())
    write_lines(tgt_out, corpus.targets())
    return corpus


def cmd_eval(model_path, src_lang, tgt_lang, test_prefix):
    model = MultilingualModel.load(model_path)
    hyps = model.translate(src_lang, tgt_lang, read_lines(f"{test_prefix}.{src_lang}"))
    refs = read_lines(f"{test_prefix}.{tgt_lang}")
    return bleu(hyps, refs)


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lgdistill", description="Language-graph distillation on synthetic or ingested corpora.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a synthetic world and its corpora")
    g.add_argument("--config", required=True)
    g.add_argument("--seed", type=int)
    g.add_argument("--out", help="data directory (overrides data_dir)")

    r = sub.add_parser("run", help="run distillation and write reports")
    r.add_argument("--config", required=True)
    r.add_argument("--mode", default="graph", choices=["initial", "bt", "forward", "graph", "compare"])
    r.add_argument("--seed", type=int)
    r.add_argument("--out", help="report directory (overrides out_dir)")
    r.add_argument("--data", help="data directory (overrides data_dir)")
    r.add_argument("--max-hops", type=int, dest="H")
    r.add_argument("--tau", type=float)
    r.add_argument("--top-k", type=int, dest="K")
    r.add_argument("--edges-per-iter", type=int, dest="M")
    r.add_argument("--max-iterations", type=int)

    i = sub.add_parser("ingest", help="register an external line-aligned parallel corpus")
    i.add_argument("src_file")
    i.add_argument("tgt_file")
    i.add_argument("--src-lang", required=True)
    i.add_argument("--tgt-lang", required=True)
    i.add_argument("--data", required=True)
    i.add_argument("--both", action="store_true", help="also register the reverse direction")

    e = sub.add_parser("eval", help="BLEU of one direction of a saved model")
    e.add_argument("--model", required=True)
    e.add_argument("--src-lang", required=True)
    e.add_argument("--tgt-lang", required=True)
    e.add_argument("--test", required=True, help="file prefix; reads <prefix>.<lang>")

    rep = sub.add_parser("report", help="re-render the table of a finished run")
    rep.add_argument("run_dir")
    rep.add_argument("--tsv", action="store_true")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")

    try:
        if args.command == "gen":
            cfg = with_overrides(load_config(args.config), seed=args.seed)
            if args.out:
                cfg.data_dir = Path(args.out)
            print(cmd_gen(cfg))
        elif args.command == "run":
            cfg = with_overrides(
                load_config(args.config),
                seed=args.seed,
                out_dir=args.out,
                H=args.H,
                tau=args.tau,
                K=args.K,
                M=args.M,
                max_iterations=args.max_iterations,
            )
            if args.data:
                cfg.data_dir = Path(args.data)
            sys.stdout.write(cmd_run(cfg, args.mode))
        elif args.command == "ingest":
            c = cmd_ingest(args.src_file, args.tgt_file, args.src_lang, args.tgt_lang, args.data, args.both)
            print(f"ingested {len(c)} pairs {c.src_lang}->{c.tgt_lang}")
        elif args.command == "eval":
            print(cmd_eval(args.model, args.src_lang, args.tgt_lang, args.test))
        elif args.command == "report":
            rows = load_rows(args.run_dir)
            sys.stdout.write(render_table(rows, sep="\t" if args.tsv else None))
    except (DataError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (LGDError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
