"""Finite groups given by multiplication tables, and permutation groups with a
Schreier-Sims stabilizer chain.

Permutations are plain tuples ``p`` with ``p[i]`` the image of ``i``.  Products
compose left to right: ``mul(p, q)`` applies ``p`` first, then ``q``.
"""

from __future__ import annotations

import csv
import io
import itertools
import threading
from dataclasses import dataclass
from typing import Optional, Sequence

ASSOCIATIVITY_LIMIT = 256


class GroupTableError(ValueError):
    """Invalid Cayley table; ``indices`` names the offending entries."""

    def __init__(self, message, indices=()):
        self.indices = tuple(indices)
        super().__init__(message)


# -- permutations -----------------------------------------------------------

def identity(n: int) -> tuple:
    return tuple(range(n))


def is_identity(p) -> bool:
    return all(i == x for i, x in enumerate(p))


def mul(p, q) -> tuple:
    """``p`` then ``q``."""
    return tuple(q[x] for x in p)


def inverse(p) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def check_permutation(p):
    if sorted(p) != list(range(len(p))):
        raise ValueError("not a permutation")


def cycles(p) -> list:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append(cyc)
    return out


def cycle_notation(p) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


def first_moved_point(p) -> Optional[int]:
    for i, x in enumerate(p):
        if i != x:
            return i
    return None


# -- permutation groups -----------------------------------------------------

class _Level:
    __slots__ = ("base", "gens", "transversal", "next")

    def __init__(self, base: int, n: int):
        self.base = base
        self.gens = []
        self.transversal = {base: identity(n)}
        self.next = None


class PermGroup:
    """Permutation group given by generators.

    The stabilizer chain is built on first use under a lock; afterwards
    ``order`` and ``contains`` are read-only.
    """

    def __init__(self, degree: int, generators: Sequence = ()):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(g)
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
            check_permutation(g)
            gens.append(g)
        self.generators = gens
        self._chain = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"

    @property
    def chain(self) -> Optional[_Level]:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = _schreier_sims(self.degree, self.generators)
        return self._chain or None

    def base(self) -> list:
        out = []
        level = self.chain
        while level is not None:
            out.append(level.base)
            level = level.next
        return out

    def order(self) -> int:
        total = 1
        level = self.chain
        while level is not None:
            total *= len(level.transversal)
            level = level.next
        return total

    def contains(self, p) -> bool:
        p = tuple(p)
        if len(p) != self.degree:
            return False
        return _sift(self.chain, p) is None

    def orbit(self, point: int) -> list:
        seen = {point}
        frontier = [point]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return sorted(seen)

    def elements(self) -> list:
        """All elements by breadth-first closure; only for small groups."""
        e = identity(self.degree)
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)


def _sift(level: Optional[_Level], p: tuple):
    """Residue of ``p`` after sifting, or ``None`` when ``p`` is a member."""
    while level is not None:
        beta = p[level.base]
        u = level.transversal.get(beta)
        if u is None:
            return p
        p = mul(p, inverse(u))
        level = level.next
    return None if is_identity(p) else p


def _extend(level: _Level, g: tuple, n: int):
    """Make ``level`` represent the group generated by its group and ``g``."""
    if _sift(level, g) is None:
        return
    level.gens.append(g)
    orbit = list(level.transversal)
    # Schreier generators for every (orbit point, generator) pair involving
    # the new generator or a new orbit point.
    pending = [(beta, g) for beta in orbit]
    i = 0
    while i < len(pending):
        beta, s = pending[i]
        i += 1
        gamma = s[beta]
        u_beta = level.transversal[beta]
        if gamma not in level.transversal:
            level.transversal[gamma] = mul(u_beta, s)
            pending.extend((gamma, t) for t in level.gens)
        else:
            schreier = mul(mul(u_beta, s), inverse(level.transversal[gamma]))
            if not is_identity(schreier):
                if level.next is None:
                    level.next = _Level(first_moved_point(schreier), n)
                _extend(level.next, schreier, n)


def _schreier_sims(n: int, gens) -> Optional[_Level]:
    top = None
    for g in gens:
        if is_identity(g):
            continue
        if top is None:
            top = _Level(first_moved_point(g), n)
        _extend(top, g, n)
    return top if top is not None else False


def same_perm_group(p: PermGroup, q: PermGroup) -> bool:
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return all(q.contains(g) for g in p.generators) and all(p.contains(g) for g in q.generators)


def group_order(p: PermGroup) -> int:
    return p.order()


# -- finite groups from tables ----------------------------------------------

@dataclass(frozen=True)
class FiniteGroup:
    """Group on indices ``0..order-1`` with index 0 the identity.

    ``table[i][j]`` is the index of ``g_i * g_j``.
    """

    labels: tuple
    table: tuple
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return self.table[i].index(0)

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.table[x][i]
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n))

    def label(self) -> str:
        return self.name or f"table[{self.order}]"


def validate_table(labels: Sequence[str], table: Sequence[Sequence[int]], trust_table: bool = False):
    n = len(labels)
    if n == 0:
        raise GroupTableError("empty group")
    if len(set(labels)) != n:
        dups = [i for i, x in enumerate(labels) if labels.index(x) != i]
        raise GroupTableError(f"duplicate labels at indices {dups}", dups)
    if len(table) != n or any(len(row) != n for row in table):
        raise GroupTableError(f"table must be {n}x{n}")
    full = set(range(n))
    for i, row in enumerate(table):
        if set(row) != full:
            raise GroupTableError(f"row {i} is not a permutation (Latin square violated)", (i,))
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise GroupTableError(f"column {j} is not a permutation (Latin square violated)", (j,))
    for i in range(n):
        if table[0][i] != i or table[i][0] != i:
            raise GroupTableError(f"identity must be listed first: entry involving element {i} fails", (0, i))
    if n > ASSOCIATIVITY_LIMIT and not trust_table:
        raise GroupTableError(
            f"order {n} exceeds {ASSOCIATIVITY_LIMIT}; associativity is not checked above that, pass trust_table")
    if n <= ASSOCIATIVITY_LIMIT:
        for a in range(n):
            ra = table[a]
            for b in range(n):
                ab = ra[b]
                rab = table[ab]
                rb = table[b]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise GroupTableError(f"associativity fails for ({a}, {b}, {c})", (a, b, c))
    for i in range(n):
        row = table[i]
        j = row.index(0)
        if table[j][i] != 0:
            raise GroupTableError(f"element {i} has no two-sided inverse", (i,))


def from_table(labels: Sequence[str], table: Sequence[Sequence[int]], name: str = "",
               trust_table: bool = False) -> FiniteGroup:
    validate_table(labels, table, trust_table)
    return FiniteGroup(tuple(labels), tuple(tuple(r) for r in table), name)


def from_cayley_table(text: str, name: str = "", trust_table: bool = False) -> FiniteGroup:
    """Parse a CSV Cayley table: header row of labels, then one row of product labels per element."""
    rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
    if not rows:
        raise GroupTableError("empty Cayley table")
    labels = [c.strip() for c in rows[0]]
    if len(set(labels)) != len(labels):
        dups = [i for i, x in enumerate(labels) if labels.index(x) != i]
        raise GroupTableError(f"duplicate labels at indices {dups}", dups)
    index = {x: i for i, x in enumerate(labels)}
    body = rows[1:]
    if len(body) != len(labels):
        raise GroupTableError(f"expected {len(labels)} product rows, found {len(body)}")
    table = []
    for i, row in enumerate(body):
        cells = [c.strip() for c in row]
        if len(cells) != len(labels):
            raise GroupTableError(f"row {i} has {len(cells)} entries, expected {len(labels)}", (i,))
        try:
            table.append([index[c] for c in cells])
        except KeyError as exc:
            raise GroupTableError(f"row {i}: unknown element label {exc.args[0]!r}", (i,)) from None
    return from_table(labels, table, name, trust_table)


def format_cayley_table(g: FiniteGroup) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(g.labels)
    for row in g.table:
        w.writerow([g.labels[x] for x in row])
    return buf.getvalue()


def _power_label(sym: str, k: int) -> str:
    return "" if k == 0 else sym if k == 1 else f"{sym}^{k}"


def cyclic_group(k: int) -> FiniteGroup:
    labels = ["e"] + [_power_label("a", i) for i in range(1, k)]
    table = [[(i + j) % k for j in range(k)] for i in range(k)]
    return from_table(labels, table, f"cyclic:{k}")


def dihedral_group(k: int) -> FiniteGroup:
    """Order 2k: rotations r^i first, then reflections r^i s."""
    elems = [(i, 0) for i in range(k)] + [(i, 1) for i in range(k)]
    index = {x: n for n, x in enumerate(elems)}

    def prod(x, y):
        (i, f), (j, g) = x, y
        return ((i + (-j if f else j)) % k, f ^ g)

    labels = [(_power_label("r", i) + ("s" if f else "")) or "e" for i, f in elems]
    table = [[index[prod(x, y)] for y in elems] for x in elems]
    return from_table(labels, table, f"dihedral:{k}")


def klein4() -> FiniteGroup:
    elems = [0b00, 0b01, 0b10, 0b11]
    labels = ["e", "a", "b", "ab"]
    table = [[elems.index(x ^ y) for y in elems] for x in elems]
    return from_table(labels, table, "klein4")


def symmetric_group(k: int) -> FiniteGroup:
    """Permutations of 0..k-1 in lexicographic one-line order; (s*t)(x) = s(t(x))."""
    elems = list(itertools.permutations(range(k)))
    index = {x: n for n, x in enumerate(elems)}
    labels = ["".join(map(str, x)) if k else "e" for x in elems]
    table = [[index[tuple(s[t[x]] for x in range(k))] for t in elems] for s in elems]
    return from_table(labels, table, f"sym:{k}")


def quaternion8() -> FiniteGroup:
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # unit quaternions as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    units = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    basis = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    table = []
    for s1, a1 in units:
        row = []
        for s2, a2 in units:
            s, a = basis[(a1, a2)]
            row.append(units.index((s1 * s2 * s, a)))
        table.append(row)
    return from_table(labels, table, "quat8")


def named_group(spec: str) -> FiniteGroup:
    """``trivial``, ``cyclic:k``, ``dihedral:k`` (order 2k), ``klein4``, ``sym:k`` (k <= 5), ``quat8``."""
    name, _, arg = spec.strip().partition(":")
    if name in ("trivial", "klein4", "quat8"):
        if arg:
            raise ValueError(f"group {name!r} takes no parameter")
        if name == "trivial":
            return from_table(["e"], [[0]], "trivial")
        return klein4() if name == "klein4" else quaternion8()
    if name not in ("cyclic", "dihedral", "sym"):
        raise ValueError(f"unknown group spec {spec!r}")
    try:
        k = int(arg)
    except ValueError:
        raise ValueError(f"group spec {spec!r} needs an integer parameter") from None
    if name == "cyclic":
        if k < 1:
            raise ValueError("cyclic:k needs k >= 1")
        return cyclic_group(k)
    if name == "dihedral":
        if k < 1:
            raise ValueError("dihedral:k needs k >= 1")
        return dihedral_group(k)
    if not 1 <= k <= 5:
        raise ValueError("sym:k needs 1 <= k <= 5")
    return symmetric_group(k)


def right_regular_action(g: FiniteGroup) -> PermGroup:
    """One permutation ``i -> i*x`` per element ``x``."""
    n = g.order
    perms = [tuple(g.table[i][x] for i in range(n)) for x in range(n)]
    return PermGroup(n, perms)
