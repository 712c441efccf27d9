import math
from collections import Counter

import networkx as nx
import pytest

from frucht_genus.aut import automorphism_group
from frucht_genus.graph import Graph
from frucht_genus.trees import (FAMILIES, PAIR_NOTE, AnchoredTree, FamilyError, TreeFamily, _Builder, certify_family,
                                compact_code_width, compact_size, compact_tree, get_family, glue, unary_size,
                                unary_tree)


def tree_aut_count(t: Graph) -> int:
    """Automorphism count of a tree from canonical rooted encodings at its centre."""
    adj = t.adjacency
    n = t.vertex_count
    deg = [len(a) for a in adj]
    leaves = [v for v in range(n) if deg[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for v in leaves:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        leaves = nxt
    centres = leaves

    def encode(v, parent):
        codes = sorted(encode(w, v) for w in adj[v] if w != parent)
        return "(" + "".join(c for c, _ in codes) + ")", _count(codes)

    def _count(codes):
        total = 1
        for _, k in codes:
            total *= k
        for mult in Counter(c for c, _ in codes).values():
            total *= math.factorial(mult)
        return total

    if len(centres) == 1:
        return encode(centres[0], -1)[1]
    a, b = centres
    (ca, ka), (cb, kb) = encode(a, b), encode(b, a)
    return ka * kb * (2 if ca == cb else 1)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return h


def test_unary_examples():
    t0 = unary_tree(0)
    assert t0.vertex_count == 17
    deg = t0.tree.degrees()
    assert deg[t0.a_vertex] == 3 and deg[t0.b_vertex] == 4
    assert max(d for v, d in enumerate(deg) if v not in (0, 1)) == 2
    assert unary_tree(1).vertex_count == 43


def test_unary_ids_are_deterministic():
    t = unary_tree(2)
    assert (t.a_vertex, t.b_vertex) == (0, 1)
    assert t.tree.edge_list == unary_tree(2).tree.edge_list
    # the first B arm starts at vertex 2 and has 6m+1 = 13 vertices
    assert t.tree.has_edge(1, 2) and t.tree.has_edge(13, 14)
    assert t.tree.degrees()[14] == 1


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_type_invariants_up_to_200(name):
    fam = get_family(name)
    for m in range(201):
        t = fam(m)
        assert t.check() == [], (name, m)
        assert t.vertex_count == fam.tree_size(m)


def test_unary_size_formula():
    assert all(unary_tree(m).vertex_count == unary_size(m) == 26 * m + 17 for m in range(60))


def test_compact_examples():
    t = compact_tree(0)
    deg = t.tree.degrees()
    assert (deg[t.a_vertex], deg[t.b_vertex]) == (4, 5)
    assert max(d for v, d in enumerate(deg) if v not in (0, 1)) <= 3
    assert not nx.is_isomorphic(to_nx(compact_tree(0).tree), to_nx(compact_tree(1).tree))


def test_compact_growth_is_logarithmic():
    ms = range(0, 5000, 37)
    assert [compact_size(m) for m in ms] == [compact_tree(m).vertex_count for m in ms]
    for m in ms:
        assert compact_size(m) <= 14 * math.log2(m + 2) + 105
    # twig counts follow the tag's popcount, so only the spine length is monotone
    widths = [compact_code_width(m) for m in range(5000)]
    assert all(a <= b for a, b in zip(widths, widths[1:]))
    assert any("14*log2(m+2) + 105" in note for note in certify_family("compact", 1).notes)


def test_glue_examples():
    t0, t1 = unary_tree(0), unary_tree(1)
    at_a = glue(t0, t1, "A")
    assert at_a.vertex_count == 59 and at_a.degrees()[0] == 6
    assert glue(t0, t1, "B").degrees()[1] == 8
    same = glue(unary_tree(2), unary_tree(2), "A")
    # copy swap, and independent swaps of the two equal-length arm pairs at A
    assert automorphism_group(same).order == tree_aut_count(same) == 8
    with pytest.raises(FamilyError):
        glue(t0, compact_tree(0), "A")


@pytest.mark.parametrize("m", [0, 1, 5])
def test_engine_agrees_with_tree_canonical_form(m):
    for t in (unary_tree(m).tree, compact_tree(m).tree):
        assert automorphism_group(t).order == tree_aut_count(t) == 1


def test_tree_oracle_on_symmetric_trees():
    star = Graph.from_edges(6, [(0, v) for v in range(1, 6)])
    assert tree_aut_count(star) == automorphism_group(star).order == 120
    double = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)])
    assert tree_aut_count(double) == automorphism_group(double).order == 8


def test_certify_small_ranges():
    report = certify_family("unary", 10)
    assert report.all_pass
    kinds = Counter(c["kind"] for c in report.checks)
    assert kinds == {"a": 11, "c": 11, "d": 11, "b": 55, "e": 110}
    assert PAIR_NOTE in report.notes
    only = certify_family("unary", 0)
    assert {c["kind"] for c in only.checks} == {"a", "c", "d"}


def test_pair_checks_against_networkx():
    trees = [unary_tree(m).tree for m in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            assert not nx.is_isomorphic(to_nx(trees[i]), to_nx(trees[j]))


def _broken(m: int) -> AnchoredTree:
    # A arms of constant length 2 in every tree: gluing two trees at A
    # puts two equal pendant paths on the merged vertex
    b = _Builder()
    for length in (6 * m + 1, 6 * m + 3, 6 * m + 5):
        b.arm(1, length)
    b.arm(0, 2)
    b.arm(0, 4 * m + 5)
    return b.anchored(3, m)


def test_certify_reports_broken_pairs():
    report = certify_family(TreeFamily("broken", 3, _broken), 3)
    failed = report.failures()
    assert failed and all(c["kind"] == "e" and c["at"] == "A" for c in failed)
    assert {(c["m"], c["m2"]) for c in failed} == {(i, j) for i in range(4) for j in range(i + 1, 4)}


def test_unknown_family():
    with pytest.raises(FamilyError):
        get_family("nope")
    with pytest.raises(FamilyError):
        unary_tree(-1)


def test_report_json_shape():
    import json
    data = json.loads(certify_family("compact", 2).to_json())
    assert set(data) >= {"family", "d", "max_m", "checks", "all_pass"}
    assert data["d"] == 4 and data["all_pass"]
