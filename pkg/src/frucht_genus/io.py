"""Edge-list, graph6 and DOT serialisation.

Edge lists look like::

    # vertices=4
    0 1
    1 2

The header is optional but required when isolated vertices exist.
"""

from __future__ import annotations

import re
from pathlib import Path

from .graph import Graph, GraphError

_HEADER = re.compile(r"#\s*vertices\s*=\s*(\d+)")

GRAPH6_MAX = 258047


class FormatError(ValueError):
    """Parse failure; carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_edge_list(text: str) -> Graph:
    declared = None
    edges = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _HEADER.match(line)
            if m:
                if declared is not None:
                    raise FormatError("duplicate vertices header", lineno)
                declared = int(m.group(1))
            continue
        line = line.split("#", 1)[0]
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'u v', got {raw!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"non-integer vertex in {raw!r}", lineno) from None
        if u < 0 or v < 0:
            raise FormatError("negative vertex id", lineno)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", lineno)
        if declared is not None and max(u, v) >= declared:
            raise FormatError(f"vertex {max(u, v)} exceeds declared count {declared}", lineno)
        edges.append((u, v))
        top = max(top, u, v)
    n = declared if declared is not None else top + 1
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"# vertices={g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_list)
    return "\n".join(lines) + "\n"


def _encode_size(n: int) -> str:
    if n < 0:
        raise GraphError("negative vertex count")
    if n <= 62:
        return chr(63 + n)
    if n <= GRAPH6_MAX:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    raise FormatError(f"graph6 size overflow: {n} vertices > {GRAPH6_MAX}")


def format_graph6(g: Graph) -> str:
    """Standard graph6 encoding followed by exactly one newline."""
    n = g.vertex_count
    out = [_encode_size(n)]
    acc = 0
    nbits = 0
    chunks = []
    edges = g.edges
    for j in range(1, n):
        for i in range(j):
            acc = (acc << 1) | ((i, j) in edges)
            nbits += 1
            if nbits == 6:
                chunks.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        chunks.append(chr(63 + (acc << (6 - nbits))))
    out.extend(chunks)
    return "".join(out) + "\n"


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty graph6 string", 1)
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x <= 63 for x in data):
        raise FormatError("graph6 character out of range", 1)
    if data[0] == 63:
        if len(data) >= 2 and data[1] == 63:
            raise FormatError(f"graph6 size overflow (8-byte form exceeds {GRAPH6_MAX} vertices)", 1)
        if len(data) < 4:
            raise FormatError("truncated graph6 size field", 1)
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {need}", 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def format_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    if g.vertex_colors is not None:
        lines.append("  node [style=filled, colorscheme=set312];")
        for v, c in enumerate(g.vertex_colors):
            lines.append(f"  {v} [fillcolor={c % 12 + 1}];")
    else:
        for v in range(g.vertex_count):
            if not g.adjacency[v]:
                lines.append(f"  {v};")
    lines.extend(f"  {u} -- {v};" for u, v in g.edge_list)
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    """Read a graph file; ``.g6``/``.graph6`` are graph6, everything else an edge list."""
    path = Path(path)
    text = path.read_text()
    if path.suffix in (".g6", ".graph6"):
        return parse_graph6(text)
    return parse_edge_list(text)


def write_graph(g: Graph, path, fmt: str = "edgelist"):
    writers = {"edgelist": format_edge_list, "graph6": format_graph6, "dot": format_dot}
    if fmt not in writers:
        raise ValueError(f"unknown graph format {fmt!r}")
    Path(path).write_text(writers[fmt](g))


def format_rotation(rotation) -> str:
    """One line per vertex: ``v: u1 u2 ... uk`` in cyclic order."""
    return "".join(f"{v}: {' '.join(map(str, row))}\n" for v, row in enumerate(rotation))


def parse_rotation(text: str) -> tuple:
    rows = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise FormatError("expected 'v: u1 u2 ...'", lineno)
        try:
            v = int(head)
            rows[v] = tuple(int(x) for x in tail.split())
        except ValueError:
            raise FormatError(f"non-integer entry in {raw!r}", lineno) from None
    n = max(rows, default=-1) + 1
    return tuple(rows.get(v, ()) for v in range(n))
