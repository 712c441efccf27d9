"""Anchored gadget trees and the certification of their family conditions.

A gadget tree has two anchors joined by an edge: the A anchor of valency ``d``
and the B anchor of valency ``d + 1``.  Every other vertex has valency at most
``d - 1``, so the anchors are recognisable by degree alone once trees are glued
into a host graph.

Two families are provided.  ``unary`` (d = 3) hangs pendant paths of pairwise
distinct lengths on the anchors; ``compact`` (d = 4) hangs binary-coded
caterpillars whose size grows only logarithmically in the index.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .aut import are_isomorphic, is_asymmetric
from .graph import Graph, disjoint_union, identify_vertices, is_connected


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class AnchoredTree:
    tree: Graph
    a_vertex: int
    b_vertex: int
    d: int
    m: int

    @property
    def vertex_count(self) -> int:
        return self.tree.vertex_count

    def check(self) -> list:
        """Names of violated structural invariants (empty when valid)."""
        bad = []
        t = self.tree
        n = t.vertex_count
        if t.edge_count != n - 1 or not is_connected(t):
            bad.append("not-a-tree")
        if self.a_vertex == self.b_vertex:
            bad.append("anchors-equal")
        deg = t.degrees()
        if deg[self.a_vertex] != self.d:
            bad.append("a-degree")
        if deg[self.b_vertex] != self.d + 1:
            bad.append("b-degree")
        for v in range(n):
            if v in (self.a_vertex, self.b_vertex):
                continue
            if deg[v] > self.d - 1:
                bad.append("uncolored-degree")
                break
        return bad


class _Builder:
    """Append-only edge list with A = 0 and B = 1 already present."""

    def __init__(self):
        self.n = 2
        self.edges = [(0, 1)]

    def new(self, attach: int) -> int:
        v = self.n
        self.n += 1
        self.edges.append((attach, v))
        return v

    def arm(self, anchor: int, length: int) -> list:
        spine = []
        prev = anchor
        for _ in range(length):
            prev = self.new(prev)
            spine.append(prev)
        return spine

    def anchored(self, d: int, m: int) -> AnchoredTree:
        return AnchoredTree(Graph.from_edges(self.n, self.edges), 0, 1, d, m)


def unary_arm_lengths(m: int) -> tuple:
    """(B-arm lengths, A-arm lengths) of the unary tree with index ``m``."""
    return (6 * m + 1, 6 * m + 3, 6 * m + 5), (4 * m + 2, 4 * m + 4)


def unary_tree(m: int) -> AnchoredTree:
    if m < 0:
        raise FamilyError("tree index must be non-negative")
    b_arms, a_arms = unary_arm_lengths(m)
    b = _Builder()
    for length in b_arms:
        b.arm(1, length)
    for length in a_arms:
        b.arm(0, length)
    return b.anchored(3, m)


def unary_size(m: int) -> int:
    return 26 * m + 17


def compact_code_width(m: int) -> int:
    return math.ceil(math.log2(7 * (m + 1)))


def compact_tree(m: int) -> AnchoredTree:
    """Seven coded caterpillar arms, B's four first, tags ``7m + slot``.

    Arm layout from the anchor outward, on a path of ``L = width + 4`` vertices:
    a bare separator, the marker (one twig), ``width`` bit positions carrying a
    twig for each 1 bit (most significant first), a bare vertex and the end
    leaf.  Interior vertices therefore have degree at most 3.
    """
    if m < 0:
        raise FamilyError("tree index must be non-negative")
    width = compact_code_width(m)
    b = _Builder()
    for slot in range(7):
        anchor = 1 if slot < 4 else 0
        tag = 7 * m + slot
        bits = [(tag >> (width - 1 - i)) & 1 for i in range(width)]
        spine = b.arm(anchor, width + 4)
        b.new(spine[1])
        for i, bit in enumerate(bits):
            if bit:
                b.new(spine[2 + i])
    return b.anchored(4, m)


def compact_size(m: int) -> int:
    width = compact_code_width(m)
    ones = sum(bin(7 * m + slot).count("1") for slot in range(7))
    return 2 + 7 * (width + 4 + 1) + ones


@dataclass(frozen=True)
class TreeFamily:
    name: str
    d: int
    build: Callable[[int], AnchoredTree] = field(compare=False)
    size: Optional[Callable[[int], int]] = field(default=None, compare=False)
    growth: str = field(default="", compare=False)

    def __call__(self, m: int) -> AnchoredTree:
        return self.build(m)

    def tree_size(self, m: int) -> int:
        return self.size(m) if self.size is not None else self.build(m).vertex_count


FAMILIES = {
    "unary": TreeFamily("unary", 3, unary_tree, unary_size),
    # 7 arms of width + 5 vertices and at most width twigs each, width <= log2(m + 2) + 4.81
    "compact": TreeFamily("compact", 4, compact_tree, compact_size,
                          growth="|T_m| <= 14*log2(m+2) + 105 (width + 4 spine vertices per arm)"),
}


def get_family(name) -> TreeFamily:
    if isinstance(name, TreeFamily):
        return name
    try:
        return FAMILIES[name]
    except KeyError:
        raise FamilyError(f"unknown tree family {name!r}; choose from {sorted(FAMILIES)}") from None


def glue(t1: AnchoredTree, t2: AnchoredTree, color: str) -> Graph:
    """Disjoint union with the two anchors of ``color`` (``"A"`` or ``"B"``) identified."""
    if t1.d != t2.d:
        raise FamilyError(f"valency mismatch: d={t1.d} vs d={t2.d}")
    if color not in ("A", "B"):
        raise ValueError("color must be 'A' or 'B'")
    u = disjoint_union(t1.tree, t2.tree)
    if color == "A":
        keep, merge = t1.a_vertex, t1.vertex_count + t2.a_vertex
    else:
        keep, merge = t1.b_vertex, t1.vertex_count + t2.b_vertex
    glued, _ = identify_vertices(u, [(keep, merge)])
    return glued


@dataclass
class CertificationReport:
    family: str
    d: int
    max_m: int
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c["pass"]]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "d": self.d,
            "max_m": self.max_m,
            "checks": self.checks,
            "all_pass": self.all_pass,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


PAIR_NOTE = ("condition (e) is checked for distinct indices m != m2 only: gluing a tree to "
             "a copy of itself always admits the copy swap")


def certify_family(family, max_m: int, node_limit: int = 10_000_000) -> CertificationReport:
    """Check conditions (a)-(e) for indices ``0..max_m`` and all distinct pairs."""
    fam = get_family(family)
    report = CertificationReport(fam.name, fam.d, max_m, notes=[PAIR_NOTE])
    if fam.growth:
        report.notes.append(f"size growth: {fam.growth}")
    trees = [fam(m) for m in range(max_m + 1)]
    for t in trees:
        bad = t.check()
        report.checks.append({"kind": "a", "m": t.m, "pass": is_asymmetric(t.tree, node_limit)})
        report.checks.append({"kind": "c", "m": t.m,
                              "pass": not ({"a-degree", "b-degree", "anchors-equal", "not-a-tree"} & set(bad))})
        report.checks.append({"kind": "d", "m": t.m, "pass": "uncolored-degree" not in bad})
    for i, t1 in enumerate(trees):
        for t2 in trees[i + 1:]:
            report.checks.append({"kind": "b", "m": t1.m, "m2": t2.m,
                                  "pass": not are_isomorphic(t1.tree, t2.tree, node_limit=node_limit)})
            for color in ("A", "B"):
                ok = is_asymmetric(glue(t1, t2, color), node_limit)
                report.checks.append({"kind": "e", "m": t1.m, "m2": t2.m, "at": color, "pass": ok})
    _record(fam, report)
    return report


# Largest index certified per family in this process.
_CERTIFIED: dict = {}


def _record(fam: TreeFamily, report: CertificationReport):
    if report.all_pass and fam.name in FAMILIES and FAMILIES[fam.name] is fam:
        _CERTIFIED[fam.name] = max(_CERTIFIED.get(fam.name, -1), report.max_m)


def certified_up_to(family) -> int:
    return _CERTIFIED.get(get_family(family).name, -1)


def ensure_certified(family, max_m: int) -> TreeFamily:
    """Certify ``family`` through ``max_m`` unless this process already has."""
    fam = get_family(family)
    if certified_up_to(fam) >= max_m:
        return fam
    report = certify_family(fam, max_m)
    if not report.all_pass:
        first = report.failures()[0]
        raise FamilyError(f"family {fam.name!r} fails certification up to m={max_m}: {first}")
    return fam
