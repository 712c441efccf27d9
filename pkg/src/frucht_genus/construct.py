"""Hypercubes, the colored Cayley digraph, and the two edge-replacement
constructions: asymmetric graphs over a hypercube and graphs with a
prescribed automorphism group over a Cayley digraph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .graph import ArcColoredDigraph, Graph, VertexRole
from .groups import FiniteGroup
from .trees import ensure_certified, get_family

DEFAULT_VERTEX_BUDGET = 2_000_000

COLOR_A, COLOR_B = 0, 1


class ConstructionError(ValueError):
    pass


class BudgetError(ConstructionError):
    """Construction would exceed the vertex budget."""


@dataclass
class ConstructionResult:
    graph: Graph
    provenance: list
    summary: dict = field(default_factory=dict)

    def vertices_with_role(self, role: str) -> list:
        return [v for v, p in enumerate(self.provenance) if p.role == role]

    def provenance_dict(self) -> dict:
        out = {k: self.summary[k] for k in ("n", "family", "group") if k in self.summary}
        out["roles"] = [p.as_dict(v) for v, p in enumerate(self.provenance)]
        return out

    def provenance_json(self) -> str:
        return json.dumps(self.provenance_dict(), separators=(",", ":")) + "\n"


def hypercube(n: int, budget: int = DEFAULT_VERTEX_BUDGET) -> Graph:
    """Q_n on coordinate bitmasks; colors 0 (A, even weight) and 1 (B, odd weight)."""
    if n < 1:
        raise ConstructionError("hypercube dimension must be at least 1")
    size = 1 << n
    if size > budget:
        raise BudgetError(f"hypercube Q_{n} has {size} vertices, over the budget of {budget}")
    edges = [(v, v | (1 << i)) for v in range(size) for i in range(n) if not v >> i & 1]
    colors = [bin(v).count("1") & 1 for v in range(size)]
    return Graph.from_edges(size, edges, colors)


def edge_ordering(q: Graph) -> dict:
    """Lexicographic bijection from edges to ``0..E-1``."""
    return {e: i for i, e in enumerate(q.edge_list)}


def gamma1_size(n: int, family) -> tuple:
    """(vertices, edges) of the asymmetric graph over Q_n."""
    fam = get_family(family)
    edge_total = n << (n - 1)
    verts = 1 << n
    edges = 0
    for m in range(edge_total):
        t = fam.tree_size(m)
        verts += t - 2
        edges += t - 1
    return verts, edges


def build_gamma_1(n: int, family="unary", budget: int = DEFAULT_VERTEX_BUDGET,
                  certify: bool = True) -> ConstructionResult:
    """Replace the m-th hypercube edge by tree ``m`` of ``family``.

    Hub ``v`` keeps id ``v`` (its bitmask); tree internals follow, tree by
    tree in edge order.  The tree's A anchor lands on the edge's even-weight
    endpoint and its B anchor on the odd-weight one.
    """
    if n < 2:
        raise ConstructionError("the asymmetric construction needs n >= 2")
    fam = get_family(family)
    edge_total = n << (n - 1)
    size, _ = gamma1_size(n, fam)
    if size > budget:
        raise BudgetError(f"Gamma_{n}(1) with the {fam.name} family has {size} vertices, "
                          f"over the budget of {budget}")
    if certify:
        ensure_certified(fam, edge_total - 1)
    q = hypercube(n, budget)
    colors = q.vertex_colors
    provenance = [VertexRole("hub-A" if colors[v] == COLOR_A else "hub-B", hub=v) for v in range(q.vertex_count)]
    edges = []
    nxt = q.vertex_count
    for m, (u, v) in enumerate(q.edge_list):
        a_end, b_end = (u, v) if colors[u] == COLOR_A else (v, u)
        t = fam(m)
        ids = [0] * t.vertex_count
        for w in range(t.vertex_count):
            if w == t.a_vertex:
                ids[w] = a_end
            elif w == t.b_vertex:
                ids[w] = b_end
            else:
                ids[w] = nxt
                provenance.append(VertexRole("tree-internal", m=m, edge=m))
                nxt += 1
        edges.extend((ids[x], ids[y]) for x, y in t.tree.edge_list)
    graph = Graph.from_edges(nxt, edges)
    summary = {
        "construction": "gamma1",
        "n": n,
        "family": fam.name,
        "d": fam.d,
        "host_vertices": q.vertex_count,
        "host_edges": q.edge_count,
        "vertices": graph.vertex_count,
        "edges": graph.edge_count,
    }
    return ConstructionResult(graph, provenance, summary)


def cayley_digraph(group: FiniteGroup) -> ArcColoredDigraph:
    """Complete digraph on the elements; arc (g, h) gets the index of h*g^-1."""
    k = group.order
    if k < 2:
        raise ConstructionError("the Cayley digraph needs a non-trivial group")
    inv = [group.inverse(i) for i in range(k)]
    colors = {}
    for g in range(k):
        for h in range(k):
            if g != h:
                colors[(g, h)] = group.mul(h, inv[g])
    return ArcColoredDigraph(k, colors)


def _far_leaf(tree: Graph, root: int, avoid: int) -> int:
    """Leaf farthest from ``root`` on its side of the edge to ``avoid``; ties to the smaller id."""
    adj = tree.adjacency
    dist = {root: 0, avoid: -1}
    frontier = [root]
    best = (0, -root)
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
                    if len(adj[w]) == 1:
                        best = max(best, (dist[w], -w))
        frontier = nxt
    return -best[1]


def gadget_anchors(gadget: ConstructionResult, family) -> tuple:
    """Gadget vertices glued to an arc's tail and head.

    These are the tips of the longest A-side and B-side arms of tree 0, the
    tree replacing hypercube edge (0, 1).  Putting the anchors on the hubs
    themselves would let pendant arms of equal length from differently
    colored gadgets meet at one group vertex, where they could be swapped.
    """
    t0 = get_family(family)(0)
    a_tip = _far_leaf(t0.tree, t0.a_vertex, t0.b_vertex)
    b_tip = _far_leaf(t0.tree, t0.b_vertex, t0.a_vertex)
    ids = {}
    nxt = gadget.summary["host_vertices"]
    for w in range(t0.vertex_count):
        if w not in (t0.a_vertex, t0.b_vertex):
            ids[w] = nxt
            nxt += 1
    return ids[a_tip], ids[b_tip]


def gamma_g_size(n: int, order: int, family) -> int:
    total = order
    for i in range(1, order):
        v, _ = gamma1_size(n + i, family)
        total += order * (v - 2)
    return total


def build_gamma_G(n: int, group: FiniteGroup, family="unary",
                  budget: int = DEFAULT_VERTEX_BUDGET, certify: bool = True) -> ConstructionResult:
    """Substitute a fresh copy of the asymmetric graph over Q_{n+i} for each arc of color i.

    Group element ``i`` is vertex ``i``.  Each copy's A anchor is identified
    with the arc tail and its B anchor with the head (see ``gadget_anchors``);
    the remaining gadget vertices follow arc by arc in lexicographic arc order.
    """
    if n < 2:
        raise ConstructionError("the group construction needs n >= 2")
    k = group.order
    if k < 2:
        raise ConstructionError("the group construction needs |G| >= 2")
    fam = get_family(family)
    size = gamma_g_size(n, k, fam)
    if size > budget:
        raise BudgetError(f"Gamma_{n}({group.label()}) with the {fam.name} family has {size} vertices, "
                          f"over the budget of {budget}")
    if certify:
        top = n + k - 1
        ensure_certified(fam, (top << (top - 1)) - 1)
    xi = cayley_digraph(group)
    gadgets = {c: build_gamma_1(n + c, fam, budget, certify=False) for c in range(1, k)}
    anchors = {c: gadget_anchors(gadgets[c], fam) for c in gadgets}
    provenance = [VertexRole("group-element", element=group.labels[i]) for i in range(k)]
    edges = []
    nxt = k
    for (tail, head) in xi.arcs:
        c = xi.arc_color[(tail, head)]
        gad = gadgets[c]
        a_anchor, b_anchor = anchors[c]
        ids = [0] * gad.graph.vertex_count
        arc = (tail, head, c)
        for w, role in enumerate(gad.provenance):
            if w == a_anchor:
                ids[w] = tail
            elif w == b_anchor:
                ids[w] = head
            else:
                ids[w] = nxt
                provenance.append(role._replace(arc=arc))
                nxt += 1
        edges.extend((ids[x], ids[y]) for x, y in gad.graph.edge_list)
    graph = Graph.from_edges(nxt, edges)
    summary = {
        "construction": "gammaG",
        "n": n,
        "family": fam.name,
        "d": fam.d,
        "group": group.label(),
        "group_order": k,
        "host_vertices": k,
        "host_arcs": len(xi.arc_color),
        "gadget_vertices": {str(c): gadgets[c].graph.vertex_count for c in gadgets},
        "vertices": graph.vertex_count,
        "edges": graph.edge_count,
    }
    if k == 2:
        summary["note"] = "|G| = 2 lies outside the stated hypothesis |G| > 2"
    return ConstructionResult(graph, provenance, summary)


def gadget_copy_vertices(result: ConstructionResult, arc: tuple) -> list:
    """Vertices of the gadget copy on ``arc`` = (tail, head, color), anchors first."""
    tail, head, _ = arc
    return [tail, head] + [v for v, p in enumerate(result.provenance) if p.arc == arc]


def largest_gadget_arc(result: ConstructionResult) -> Optional[tuple]:
    arcs = {p.arc for p in result.provenance if p.arc is not None}
    if not arcs:
        return None
    return max(arcs, key=lambda a: (a[2], -a[0], -a[1]))
