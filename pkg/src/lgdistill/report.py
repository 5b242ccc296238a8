"""Rendering and persisting run results.

Machine-readable files are JSON with sorted keys; human tables mirror the
Initial / +BT / +Forward / +Graph layout, two decimals, with an ``Av.`` row
per iteration giving the mean initial score and the mean gain of each column.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .corpus import write_parallel

LABELS = {"initial": "Initial", "bt": "+BT", "forward": "+Forward", "graph": "+Graph"}


def dump_json(obj, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _columns(rows):
    return [c for c in ("initial", "bt", "forward", "graph") if rows and c in rows[0]]


def average_rows(rows) -> list[dict]:
    """One summary row per iteration: mean of Initial, mean gain of every other column."""
    cols = _columns(rows)
    out = []
    for T in sorted({r["T"] for r in rows if r["T"] is not None}):
        group = [r for r in rows if r["T"] == T]
        avg = {"T": T, "initial": math.fsum(r["initial"] for r in group) / len(group)}
        for c in cols[1:]:
            avg[c] = math.fsum(r[c] - r["initial"] for r in group) / len(group)
        out.append(avg)
    return out


def render_table(rows, sep=None) -> str:
    """Plain aligned text, or delimiter-separated when ``sep`` is given."""
    cols = _columns(rows)
    header = ["T", "Pair"] + [LABELS[c] for c in cols]
    lines = []
    if sep is not None:
        lines.append(sep.join(header))
        for r in rows:
            lines.append(sep.join([str(r["T"]), "->".join(r["edge"])] + [f"{r[c]:.2f}" for c in cols]))
        return "\n".join(lines) + "\n"

    widths = [3, max([8] + [len("->".join(r["edge"])) for r in rows])] + [max(8, len(LABELS[c])) for c in cols]
    fmt = lambda cells: "  ".join(str(x).rjust(w) if i != 1 else str(x).ljust(w) for i, (x, w) in enumerate(zip(cells, widths)))  # noqa: E731
    rule = "-" * len(fmt(header))
    lines += [fmt(header), rule]
    averages = {a["T"]: a for a in average_rows(rows)}
    last = None
    for r in rows:
        if last is not None and r["T"] != last and last in averages:
            lines += [_avg_line(fmt, averages[last], cols), rule]
        lines.append(fmt([r["T"] if r["T"] is not None else "", "->".join(r["edge"])] + [f"{r[c]:.2f}" for c in cols]))
        last = r["T"]
    if last in averages:
        lines += [_avg_line(fmt, averages[last], cols), rule]
    return "\n".join(lines) + "\n"


def _avg_line(fmt, avg, cols):
    cells = ["Av.", ""] + [f"{avg['initial']:.2f}"] + [f"{avg[c]:+.2f}" for c in cols[1:]]
    return fmt(cells)


def run_rows(initial, reports, mode) -> list[dict]:
    """Table rows for a single-mode run: its selected edges, Initial vs. after iteration T."""
    from .orchestrator import score_after

    rows = []
    for rep in reports:
        for edge in rep.edges:
            rows.append({"T": rep.T, "edge": list(edge), "initial": initial[edge], mode: score_after(reports, rep.T, edge, initial)})
    return rows


def initial_rows(initial) -> list[dict]:
    return [{"T": None, "edge": list(e), "initial": s} for e, s in sorted(initial.items())]


def write_results(out_dir, manifest, initial, runs, rows, model=None, corpora=None) -> Path:
    """Write everything a run produces under ``out_dir``.

    ``runs`` maps mode -> list of IterationReport. Timings go to their own
    file so the remaining outputs are byte-identical across reruns.
    """
    from .orchestrator import _edge_map

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    dump_json(manifest, out / "manifest.json")
    dump_json(_edge_map(initial), out / "initial_scores.json")
    timings = {}
    for mode, reports in runs.items():
        for rep in reports:
            dump_json(rep.to_dict(), out / mode / f"iteration_{rep.T}.json")
            if rep.table is not None:
                rep.table.export(out / mode)
        timings[mode] = [{"T": r.T, "wall_time": r.wall_time} for r in reports]
    dump_json({"rows": rows, "averages": average_rows(rows)}, out / "results.json")
    (out / "results.tsv").write_text(render_table(rows, sep="\t"), encoding="utf-8")
    (out / "results.txt").write_text(render_table(rows), encoding="utf-8")
    dump_json(timings, out / "timings.json")
    if model is not None:
        model.save(out / "model.json")
    if corpora:
        for corpus in corpora.values():
            if any(p != "real" for p in corpus.provenance):
                write_parallel(corpus, out / "corpora")
    return out


def load_rows(out_dir) -> list[dict]:
    return json.loads((Path(out_dir) / "results.json").read_text(encoding="utf-8"))["rows"]
