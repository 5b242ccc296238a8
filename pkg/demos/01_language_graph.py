"""A language graph: nodes are languages, directed edges carry bitext counts.

Builds the 9-language TED topology, prints its degree structure and
round-trips it through the YAML file format.
"""

import tempfile
from pathlib import Path

from lgdistill.graph import dump_graph, load_graph, ted9_graph

g = ted9_graph(count=1000, mono=5000)
# low-resource pairs get a small bitext
for a, b in g.sorted_edges():
    if "En" not in (a, b) and not {a, b} <= {"Ar", "Fr", "Ru"}:
        g.add_edge(a, b, 40)

print(f"{len(g.nodes)} languages, {len(g.edge_data)} directed edges")
for v in g.languages():
    out = g.successors(v)
    print(f"  {v}: -> {', '.join(out):<28} bitext volume {g.bilingual_volume(v):>6}")

with tempfile.TemporaryDirectory() as d:
    path = dump_graph(g, Path(d) / "graph.yaml")
    again = load_graph(path)
    print("YAML round trip identical:", again.to_dict() == g.to_dict())
