"""Plain simple graphs, arc-colored digraphs and the structural queries shared
by every other module.

Vertices are dense integers ``0..n-1``.  Edges are stored canonically as
``(min, max)`` pairs, so two graphs with the same edge set compare equal no
matter how they were assembled.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

INFINITY = float("inf")


class GraphError(ValueError):
    """Raised for malformed graphs or invalid vertex arguments."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph with optional vertex color classes."""

    vertex_count: int
    edges: frozenset
    vertex_colors: Optional[tuple] = None

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise GraphError("vertex_count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < v < n):
                raise GraphError(f"edge ({u}, {v}) is not canonical or out of range for {n} vertices")
        if self.vertex_colors is not None:
            if len(self.vertex_colors) != n:
                raise GraphError("vertex color mapping must be total over vertices")
            if any(c < 0 for c in self.vertex_colors):
                raise GraphError("vertex colors must be non-negative")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable, colors: Optional[Sequence[int]] = None) -> "Graph":
        """Build a graph, canonicalising edge orientation and dropping repeats.

        Self-loops are rejected rather than dropped.
        """
        canon = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            canon.add((u, v) if u < v else (v, u))
        return cls(vertex_count, frozenset(canon), tuple(colors) if colors is not None else None)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.vertex_count == other.vertex_count and self.edges == other.edges
                and self.vertex_colors == other.vertex_colors)

    def __hash__(self):
        return hash((self.vertex_count, self.edges, self.vertex_colors))

    def __repr__(self):
        return f"Graph(vertex_count={self.vertex_count}, edges={len(self.edges)})"

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_list(self) -> list:
        return sorted(self.edges)

    @cached_property
    def adjacency(self) -> list:
        """Sorted neighbor lists."""
        adj = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for row in adj:
            row.sort()
        return adj

    def degrees(self) -> list:
        return [len(row) for row in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def without_colors(self) -> "Graph":
        if self.vertex_colors is None:
            return self
        return Graph(self.vertex_count, self.edges)

    def with_colors(self, colors: Sequence[int]) -> "Graph":
        return Graph(self.vertex_count, self.edges, tuple(colors))

    def relabel(self, mapping: Sequence[int]) -> "Graph":
        """Image of the graph under the bijection ``v -> mapping[v]``."""
        n = self.vertex_count
        if sorted(mapping) != list(range(n)):
            raise GraphError("relabeling must be a permutation of the vertex set")
        edges = frozenset((mapping[u], mapping[v]) if mapping[u] < mapping[v] else (mapping[v], mapping[u])
                          for u, v in self.edges)
        colors = None
        if self.vertex_colors is not None:
            new = [0] * n
            for v, c in enumerate(self.vertex_colors):
                new[mapping[v]] = c
            colors = tuple(new)
        return Graph(n, edges, colors)

    def induced_subgraph(self, vertices: Sequence[int]) -> tuple:
        """Induced subgraph on ``vertices`` (relabeled in the given order) and the old->new map."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = []
        for u, v in self.edges:
            if u in index and v in index:
                edges.append((index[u], index[v]))
        colors = None
        if self.vertex_colors is not None:
            colors = [self.vertex_colors[v] for v in vertices]
        return Graph.from_edges(len(vertices), edges, colors), index


@dataclass(frozen=True)
class ArcColoredDigraph:
    """Loopless digraph with at most one arc per ordered pair and colors 1..C."""

    vertex_count: int
    arc_color: dict = field(hash=False)

    def __post_init__(self):
        n = self.vertex_count
        for (t, h), c in self.arc_color.items():
            if t == h:
                raise GraphError(f"loop arc at vertex {t}")
            if not (0 <= t < n and 0 <= h < n):
                raise GraphError(f"arc ({t}, {h}) out of range")
            if not isinstance(c, int) or c < 1:
                raise GraphError(f"arc color {c!r} must be a positive integer")
        used = set(self.arc_color.values())
        if used and used != set(range(1, max(used) + 1)):
            raise GraphError("arc colors must form a contiguous range 1..C")

    @property
    def arcs(self) -> list:
        return sorted(self.arc_color)

    @property
    def color_count(self) -> int:
        return max(self.arc_color.values(), default=0)

    def color_classes(self) -> dict:
        classes = {}
        for arc in self.arcs:
            classes.setdefault(self.arc_color[arc], []).append(arc)
        return classes


class VertexRole(NamedTuple):
    """Provenance of one vertex of a constructed graph.

    ``role`` is one of ``hub-A``, ``hub-B``, ``group-element``, ``tree-internal``.
    ``edge`` is the host hypercube edge index, ``arc`` the host Cayley arc
    ``(tail, head, color)``; ``hub`` is the hypercube vertex mask a hub came from.
    """

    role: str
    m: Optional[int] = None
    edge: Optional[int] = None
    arc: Optional[tuple] = None
    hub: Optional[int] = None
    element: Optional[str] = None

    def as_dict(self, v: int) -> dict:
        out = {"v": v, "role": self.role}
        for key in ("m", "edge", "arc", "hub", "element"):
            val = getattr(self, key)
            if val is not None:
                out[key] = list(val) if isinstance(val, tuple) else val
        return out


def _check_vertex(g: Graph, v: int):
    if not (0 <= v < g.vertex_count):
        raise GraphError(f"vertex {v} out of range for {g.vertex_count} vertices")


def degree(g: Graph, v: int) -> int:
    _check_vertex(g, v)
    return len(g.adjacency[v])


def components(g: Graph) -> list:
    adj = g.adjacency
    seen = [False] * g.vertex_count
    out = []
    for s in range(g.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    if g.vertex_count <= 1:
        return True
    return len(components(g)) == 1


def bipartition(g: Graph) -> Optional[tuple]:
    """Split a connected graph into classes (A, B) with every edge crossing.

    The class holding vertex 0 is A.  Returns ``None`` when an odd cycle exists.
    """
    if not is_connected(g):
        raise GraphError("bipartition requires a connected graph")
    n = g.vertex_count
    if n == 0:
        return [], []
    side = [-1] * n
    side[0] = 0
    queue = deque([0])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if side[w] < 0:
                side[w] = 1 - side[u]
                queue.append(w)
            elif side[w] == side[u]:
                return None
    a = [v for v in range(n) if side[v] == 0]
    b = [v for v in range(n) if side[v] == 1]
    return a, b


def girth(g: Graph):
    """Length of a shortest cycle, ``INFINITY`` for forests.

    BFS from every vertex; each search stops once it cannot beat the best
    cycle found so far.
    """
    adj = g.adjacency
    n = g.vertex_count
    best = INFINITY
    for s in range(n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cycle = du + dist[w] + 1
                    if cycle < best:
                        best = cycle
    return best


def identify_vertices(g: Graph, pairs: Sequence[tuple]) -> tuple:
    """Merge each ``merge`` vertex into its ``keep`` vertex.

    Incident edges are united, loops and duplicate edges dropped, and the
    surviving vertices are renumbered in increasing order.  Returns the new
    graph and the relabeling list ``old -> new``.
    """
    target = list(range(g.vertex_count))
    merged = set()
    keeps = set()
    for keep, merge in pairs:
        _check_vertex(g, keep)
        _check_vertex(g, merge)
        if keep == merge:
            raise GraphError(f"cannot identify vertex {keep} with itself")
        if merge in merged or merge in keeps or keep in merged:
            raise GraphError(f"overlapping merge request ({keep}, {merge})")
        merged.add(merge)
        keeps.add(keep)
        target[merge] = keep
    survivors = [v for v in range(g.vertex_count) if v not in merged]
    new_id = {v: i for i, v in enumerate(survivors)}
    relabel = [new_id[target[v]] for v in range(g.vertex_count)]
    edges = set()
    for u, v in g.edges:
        a, b = relabel[u], relabel[v]
        if a != b:
            edges.add((a, b) if a < b else (b, a))
    colors = None
    if g.vertex_colors is not None:
        colors = tuple(g.vertex_colors[v] for v in survivors)
    return Graph(len(survivors), frozenset(edges), colors), relabel


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.vertex_count
    edges = set(g1.edges)
    edges.update((u + shift, v + shift) for u, v in g2.edges)
    colors = None
    if g1.vertex_colors is not None and g2.vertex_colors is not None:
        colors = g1.vertex_colors + g2.vertex_colors
    return Graph(g1.vertex_count + g2.vertex_count, frozenset(edges), colors)


# Small named graphs used across tests and the CLI.

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
