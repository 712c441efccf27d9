"""Automorphism groups of vertex-colored graphs by individualization-refinement.

The partition is kept nauty-style: ``lab`` lists the vertices, every cell is a
contiguous slice ``lab[s:e]`` and ``cell_of[v]`` holds the start ``s`` of the
cell containing ``v``.  Refinement is Hopcroft's smaller-half scheme with a
canonical choice at every step (splitters in queue order, fragments ordered by
neighbor count), so refining isomorphic inputs gives corresponding partitions.

Search follows the first path to a discrete leaf, then works back up the path:
at level ``k`` every vertex of the target cell not yet in the orbit of the
base point is tried, and the subtree below it is explored until a leaf that
induces an automorphism turns up.  The generators found this way generate the
full group.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import Graph
from .groups import PermGroup, cycle_notation, identity

DEFAULT_NODE_LIMIT = 10_000_000


class BudgetExceeded(RuntimeError):
    """Search node limit hit; ``stats`` holds the partial counters."""

    def __init__(self, message, stats=None):
        self.stats = dict(stats or {})
        super().__init__(message)


class _Partition:
    __slots__ = ("lab", "pos", "cell_of", "cell_end", "ncells")

    def copy(self):
        p = _Partition()
        p.lab = self.lab[:]
        p.pos = self.pos[:]
        p.cell_of = self.cell_of[:]
        p.cell_end = self.cell_end[:]
        p.ncells = self.ncells
        return p

    @classmethod
    def from_cells(cls, n, cells):
        p = cls()
        p.lab = [0] * n
        p.pos = [0] * n
        p.cell_of = [0] * n
        p.cell_end = [0] * n
        i = 0
        for cell in cells:
            s = i
            for v in cell:
                p.lab[i] = v
                p.pos[v] = i
                p.cell_of[v] = s
                i += 1
            p.cell_end[s] = i
        if i != n:
            raise ValueError("initial partition must cover every vertex exactly once")
        p.ncells = len(cells)
        return p

    def starts(self):
        out = []
        i, n = 0, len(self.lab)
        while i < n:
            out.append(i)
            i = self.cell_end[i]
        return out

    def cells(self):
        return [sorted(self.lab[s:self.cell_end[s]]) for s in self.starts()]

    def shape(self):
        return [(s, self.cell_end[s]) for s in self.starts()]

    def has_shape(self, shape) -> bool:
        if len(shape) != self.ncells:
            return False
        lab, cell_of, cell_end = self.lab, self.cell_of, self.cell_end
        for s, e in shape:
            if cell_of[lab[s]] != s or cell_end[s] != e:
                return False
        return True

    def target_cell(self):
        """Start of the first smallest non-singleton cell, or ``None`` if discrete."""
        best = None
        best_size = 0
        for s in self.starts():
            size = self.cell_end[s] - s
            if size > 1 and (best is None or size < best_size):
                best, best_size = s, size
                if size == 2:
                    break
        return best

    def individualize(self, v):
        """Split ``v`` off as a singleton at the end of its cell; return the new start."""
        s = self.cell_of[v]
        e = self.cell_end[s]
        last = e - 1
        p = self.pos[v]
        u = self.lab[last]
        self.lab[last], self.lab[p] = v, u
        self.pos[v], self.pos[u] = last, p
        self.cell_end[s] = last
        self.cell_of[v] = last
        self.cell_end[last] = e
        self.ncells += 1
        return last


def _refine(adj, part: _Partition, splitters, counter: list, stats: dict):
    """Refine ``part`` in place to the coarsest equitable partition below it.

    ``counter`` is a zeroed scratch list of length n and is left zeroed.
    """
    lab, pos, cell_of, cell_end = part.lab, part.pos, part.cell_of, part.cell_end
    queued = set(splitters)
    queue = deque(sorted(queued))
    splits = 0
    while queue:
        w = queue.popleft()
        queued.discard(w)
        touched = []
        for x in lab[w:cell_end[w]]:
            for y in adj[x]:
                c = counter[y]
                if c == 0:
                    touched.append(y)
                counter[y] = c + 1
        by_cell = {}
        for y in touched:
            s = cell_of[y]
            if cell_end[s] - s > 1:
                lst = by_cell.get(s)
                if lst is None:
                    by_cell[s] = [y]
                else:
                    lst.append(y)
        for s in sorted(by_cell):
            members = by_cell[s]
            e = cell_end[s]
            k = len(members)
            if k == e - s:
                c0 = counter[members[0]]
                if all(counter[y] == c0 for y in members):
                    continue
            # move members to the tail of the cell
            t = e
            for y in members:
                t -= 1
                p = pos[y]
                z = lab[t]
                lab[t], lab[p] = y, z
                pos[y], pos[z] = t, p
            members.sort(key=counter.__getitem__)
            i = t
            for y in members:
                lab[i] = y
                pos[y] = i
                i += 1
            frags = []
            if t > s:
                frags.append(s)
                cell_end[s] = t
                start = t
            else:
                start = s
            prev = None
            i = t
            for y in members:
                c = counter[y]
                if c != prev:
                    if prev is not None:
                        cell_end[start] = i
                        start = i
                    frags.append(start)
                    prev = c
                cell_of[y] = start
                i += 1
            cell_end[start] = e
            nfr = len(frags)
            if nfr == 1:
                continue
            splits += 1
            part.ncells += nfr - 1
            if s in queued:
                add = frags[1:]
            else:
                big = frags[0]
                big_size = cell_end[big] - big
                for f in frags[1:]:
                    if cell_end[f] - f > big_size:
                        big, big_size = f, cell_end[f] - f
                add = [f for f in frags if f != big]
            for f in add:
                queued.add(f)
                queue.append(f)
        for y in touched:
            counter[y] = 0
    stats["refinements"] = stats.get("refinements", 0) + 1
    stats["splits"] = stats.get("splits", 0) + splits


def _initial_cells(g: Graph, colors: Optional[Sequence[int]]):
    if colors is not None and len(colors) != g.vertex_count:
        raise ValueError("coloring must be total over vertices")
    keys = list(colors) if colors is not None else [len(row) for row in g.adjacency]
    classes = {}
    for v, k in enumerate(keys):
        classes.setdefault(k, []).append(v)
    order = sorted(classes)
    return order, [classes[k] for k in order]


@dataclass
class AutResult:
    degree: int
    generators: list
    order: int
    orbits: list
    base: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def group(self) -> PermGroup:
        return PermGroup(self.degree, self.generators)

    def to_dict(self) -> dict:
        return {
            "order": str(self.order),
            "generators": [cycle_notation(g) for g in self.generators],
            "orbits": [o for o in self.orbits if len(o) > 1],
            "base": self.base,
            "stats": dict(sorted(self.stats.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class _Search:
    def __init__(self, g: Graph, colors, node_limit):
        self.g = g
        self.n = g.vertex_count
        self.adj = g.adjacency
        self.colors = colors
        self.node_limit = node_limit
        self.counter = [0] * self.n
        self.stats = {"nodes": 0, "leaves": 0, "refinements": 0, "splits": 0}

    def refine(self, part, splitters):
        _refine(self.adj, part, splitters, self.counter, self.stats)

    def tick(self):
        self.stats["nodes"] += 1
        if self.stats["nodes"] > self.node_limit:
            raise BudgetExceeded(f"automorphism search exceeded {self.node_limit} nodes", self.stats)

    def root(self):
        keys, cells = _initial_cells(self.g, self.colors)
        part = _Partition.from_cells(self.n, cells)
        self.refine(part, part.starts())
        return keys, part

    def first_path(self, root):
        """Nodes along the leftmost path; returns (nodes, shapes, targets, base)."""
        nodes, shapes, targets, base = [root], [root.shape()], [], []
        part = root
        self.tick()
        while True:
            s = part.target_cell()
            if s is None:
                break
            b = min(part.lab[s:part.cell_end[s]])
            child = part.copy()
            self.refine(child, [child.individualize(b)])
            self.tick()
            nodes.append(child)
            shapes.append(child.shape())
            targets.append(s)
            base.append(b)
            part = child
        return nodes, shapes, targets, base

    def explore(self, part, level, shapes, targets, accept):
        """Depth-first search below ``part`` (at ``level``) for a leaf passing ``accept``."""
        self.tick()
        if not part.has_shape(shapes[level]):
            return None
        if level == len(targets):
            self.stats["leaves"] += 1
            return accept(part.lab)
        s = targets[level]
        for v in sorted(part.lab[s:part.cell_end[s]]):
            child = part.copy()
            self.refine(child, [child.individualize(v)])
            found = self.explore(child, level + 1, shapes, targets, accept)
            if found is not None:
                return found
        return None


def _union_find_orbits(n, gens):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in gens:
        for x in range(n):
            a, b = find(x), find(gamma[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return find


def is_automorphism(g: Graph, perm, colors=None) -> bool:
    if len(perm) != g.vertex_count or sorted(perm) != list(range(g.vertex_count)):
        return False
    if colors is not None and any(colors[v] != colors[perm[v]] for v in range(g.vertex_count)):
        return False
    edges = g.edges
    for u, v in edges:
        a, b = perm[u], perm[v]
        if ((a, b) if a < b else (b, a)) not in edges:
            return False
    return True


def automorphism_group(g: Graph, colors: Optional[Sequence[int]] = None,
                       node_limit: int = DEFAULT_NODE_LIMIT) -> AutResult:
    """Generators, order and orbits of the color-preserving automorphism group.

    Without ``colors`` the plain graph is used (initial cells = degree classes);
    ``g.vertex_colors`` is only honored when passed explicitly.
    """
    n = g.vertex_count
    search = _Search(g, colors, node_limit)
    if n == 0:
        return AutResult(0, [], 1, [], [], search.stats)
    _, root = search.root()
    nodes, shapes, targets, base = search.first_path(root)
    leaf = nodes[-1].lab[:]
    gens = []
    find = _union_find_orbits(n, [])

    def accept(lab):
        gamma = [0] * n
        for i, v in enumerate(leaf):
            gamma[v] = lab[i]
        gamma = tuple(gamma)
        return gamma if is_automorphism(g, gamma, colors) else None

    for k in range(len(targets) - 1, -1, -1):
        s = targets[k]
        part = nodes[k]
        bk = base[k]
        for w in sorted(part.lab[s:part.cell_end[s]]):
            if find(w) == find(bk):
                continue
            child = part.copy()
            search.refine(child, [child.individualize(w)])
            gamma = search.explore(child, k + 1, shapes, targets, accept)
            if gamma is not None:
                gens.append(gamma)
                find = _union_find_orbits(n, gens)

    groups = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    orbits = sorted(groups.values())
    order = PermGroup(n, gens).order()
    return AutResult(n, gens, order, orbits, base, search.stats)


def is_asymmetric(g: Graph, node_limit: int = DEFAULT_NODE_LIMIT) -> bool:
    return automorphism_group(g, node_limit=node_limit).order == 1


def color_refinement(g: Graph, initial: Sequence[Sequence[int]]) -> list:
    """Coarsest equitable refinement of the ordered partition ``initial``."""
    part = _Partition.from_cells(g.vertex_count, [list(c) for c in initial])
    search = _Search(g, None, DEFAULT_NODE_LIMIT)
    search.refine(part, part.starts())
    return part.cells()


def find_isomorphism(g1: Graph, g2: Graph, colored: bool = False,
                     node_limit: int = DEFAULT_NODE_LIMIT) -> Optional[tuple]:
    """A bijection ``phi`` with ``phi(g1) == g2``, or ``None``.

    The first path of ``g1`` is mapped onto matching paths of ``g2``'s search
    tree; any isomorphism maps that path onto one of them, so the search is
    complete.
    """
    n = g1.vertex_count
    if n != g2.vertex_count or g1.edge_count != g2.edge_count:
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    c1 = g1.vertex_colors if colored else None
    c2 = g2.vertex_colors if colored else None
    if colored and (c1 is None) != (c2 is None):
        return None
    if c1 is not None and sorted(c1) != sorted(c2):
        return None
    s1 = _Search(g1, c1, node_limit)
    s2 = _Search(g2, c2, node_limit)
    if n == 0:
        return ()
    keys1, root1 = s1.root()
    keys2, root2 = s2.root()
    if keys1 != keys2:
        return None
    nodes, shapes, targets, _ = s1.first_path(root1)
    leaf = nodes[-1].lab[:]

    def accept(lab):
        phi = [0] * n
        for i, v in enumerate(leaf):
            phi[v] = lab[i]
        if c1 is not None and any(c1[v] != c2[phi[v]] for v in range(n)):
            return None
        e2 = g2.edges
        for u, v in g1.edges:
            a, b = phi[u], phi[v]
            if ((a, b) if a < b else (b, a)) not in e2:
                return None
        return tuple(phi)

    return s2.explore(root2, 0, shapes, targets, accept)


def are_isomorphic(g1: Graph, g2: Graph, colored: bool = False,
                   node_limit: int = DEFAULT_NODE_LIMIT) -> bool:
    return find_isomorphism(g1, g2, colored, node_limit) is not None


def restrict_to(result: AutResult, subset: Sequence[int]) -> PermGroup:
    """Permutation group induced on ``subset`` (positions in the given order)."""
    index = {v: i for i, v in enumerate(subset)}
    if len(index) != len(subset):
        raise ValueError("subset has repeated vertices")
    perms = []
    for gamma in result.generators:
        img = []
        for v in subset:
            w = gamma[v]
            if w not in index:
                raise ValueError(f"subset is not invariant: generator maps {v} to {w}")
            img.append(index[w])
        perms.append(tuple(img))
    return PermGroup(len(subset), perms or [identity(len(subset))])
