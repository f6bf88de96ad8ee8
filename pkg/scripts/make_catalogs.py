"""Regenerate the graph6 fixture catalogs under tests/data.

Needs networkx (atlas of all graphs up to 7 vertices, nonisomorphic trees).
Run from the repository root: python3 scripts/make_catalogs.py
"""

from pathlib import Path

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

from tarsgraph.graph import Graph, to_graph6

OUT = Path(__file__).resolve().parent.parent / "tests" / "data"


def encode(g) -> str:
    g = nx.convert_node_labels_to_integers(g)
    return to_graph6(Graph.from_edges(g.number_of_nodes(), g.edges()))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    by_order = {}
    for g in graph_atlas_g():
        by_order.setdefault(g.number_of_nodes(), []).append(encode(g))
    for n in range(0, 7):
        (OUT / f"graphs{n}.g6").write_text("\n".join(by_order[n]) + "\n")
    trees = ["@"] + [encode(t) for n in range(2, 9) for t in nx.nonisomorphic_trees(n)]
    (OUT / "trees_le8.g6").write_text("\n".join(trees) + "\n")
    print(f"graphs per order: {[len(by_order[n]) for n in range(7)]}, trees: {len(trees)}")


if __name__ == "__main__":
    main()
