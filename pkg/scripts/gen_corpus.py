"""Write one graph6 line per isomorphism class of graphs on 1..8 vertices.

Classes up to 7 vertices come from the networkx atlas.  The 8-vertex classes
are obtained by adding a vertex to each 7-vertex class with every possible
neighbourhood and keeping one representative per isomorphism class.
"""

import sys
from collections import defaultdict
from itertools import combinations
from pathlib import Path

import networkx as nx

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
from frucht_genus.aut import are_isomorphic, color_refinement  # noqa: E402
from frucht_genus.graph import Graph  # noqa: E402
from frucht_genus.io import format_graph6  # noqa: E402

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "graphs_upto8.g6"


def to_graph(h) -> Graph:
    return Graph.from_edges(h.number_of_nodes(), list(h.edges()))


def invariant(g: Graph):
    cells = color_refinement(g, [range(g.vertex_count)])
    return g.edge_count, tuple((len(c), g.degrees()[c[0]]) for c in cells)


def main():
    by_n = defaultdict(list)
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() >= 1:
            by_n[h.number_of_nodes()].append(to_graph(h))
    buckets = defaultdict(list)
    for g in by_n[7]:
        for r in range(8):
            for nbrs in combinations(range(7), r):
                cand = Graph.from_edges(8, list(g.edge_list) + [(v, 7) for v in nbrs])
                bucket = buckets[invariant(cand)]
                if not any(are_isomorphic(cand, other) for other in bucket):
                    bucket.append(cand)
    by_n[8] = [g for key in sorted(buckets) for g in buckets[key]]
    with OUT.open("w") as fh:
        for n in range(1, 9):
            for g in by_n[n]:
                fh.write(format_graph6(g))
    print({n: len(by_n[n]) for n in range(1, 9)})


if __name__ == "__main__":
    main()
