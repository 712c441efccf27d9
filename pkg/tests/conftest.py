"""Independent oracles shared by the test modules.

Nothing here uses the automorphism engine or the pruned genus search, so the
oracles can be compared against them.
"""

import itertools
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from frucht_genus.graph import Graph, is_connected
from frucht_genus.io import parse_graph6

DATA = Path(__file__).parent / "data"


def brute_force_aut_count(g: Graph, colors=None) -> int:
    """Count automorphisms by extending partial maps vertex by vertex.

    Every permutation is reachable; a branch is cut only when an already
    mapped pair disagrees on adjacency, degree or color.
    """
    n = g.vertex_count
    adj = [0] * n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    deg = [bin(a).count("1") for a in adj]
    col = list(colors) if colors is not None else [0] * n
    image = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            return 1
        total = 0
        for w in range(n):
            if used[w] or deg[w] != deg[v] or col[w] != col[v]:
                continue
            if any(((adj[v] >> u) & 1) != ((adj[w] >> image[u]) & 1) for u in range(v)):
                continue
            image[v], used[w] = w, True
            total += extend(v + 1)
            used[w] = False
        image[v] = -1
        return total

    return extend(0)


def brute_force_genus(g: Graph) -> int:
    """Minimum genus over every rotation system, with no pruning at all."""
    assert is_connected(g)
    adj = g.adjacency
    choices = []
    for v in range(g.vertex_count):
        row = adj[v]
        if len(row) <= 2:
            choices.append([tuple(row)])
        else:
            choices.append([(row[0],) + p for p in itertools.permutations(row[1:])])
    best = None
    V, E = g.vertex_count, g.edge_count
    for rotation in itertools.product(*choices):
        pos = {}
        for v, row in enumerate(rotation):
            for i, u in enumerate(row):
                pos[(v, u)] = row[(i + 1) % len(row)]
        seen = set()
        faces = 0
        for dart in pos:
            if dart in seen:
                continue
            faces += 1
            d = dart
            while d not in seen:
                seen.add(d)
                u, v = d
                d = (v, pos[(v, u)])
        genus = (2 - V + E - faces) // 2 if E else 0
        best = genus if best is None else min(best, genus)
    return best


def load_corpus():
    lines = (DATA / "graphs_upto8.g6").read_text().split()
    return [parse_graph6(line) for line in lines]


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@st.composite
def graphs(draw, min_vertices=1, max_vertices=8, connected=False):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = [p for p in pairs if draw(st.booleans())]
    if connected:
        # a random spanning tree keeps the graph connected
        for v in range(1, n):
            edges.append((draw(st.integers(0, v - 1)), v))
    return Graph.from_edges(n, edges)


@st.composite
def permutations(draw, n):
    return tuple(draw(st.permutations(range(n))))


@pytest.fixture(scope="session")
def gamma_z3():
    from frucht_genus.construct import build_gamma_G
    from frucht_genus.groups import named_group
    return build_gamma_G(2, named_group("cyclic:3"))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(module.VERDICTS, key=str):
        ok, label, detail, elapsed = module.VERDICTS[key]
        info = "; ".join(detail)
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {label} ({info})")
