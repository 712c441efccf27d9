import json
import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frucht_genus.aut import (BudgetExceeded, are_isomorphic, automorphism_group, color_refinement, find_isomorphism,
                              is_asymmetric, is_automorphism, restrict_to)
from frucht_genus.construct import build_gamma_1, hypercube
from frucht_genus.graph import (Graph, complete_bipartite_graph, complete_graph, cycle_graph, path_graph,
                                petersen_graph, star_graph)
from frucht_genus.trees import unary_tree

from conftest import brute_force_aut_count, graphs, permutations


def test_order_examples():
    assert automorphism_group(hypercube(3)).order == 48
    assert automorphism_group(cycle_graph(4)).order == 8
    assert automorphism_group(unary_tree(5).tree).order == 1
    assert automorphism_group(petersen_graph()).order == 120


def test_asymmetry_examples():
    assert is_asymmetric(Graph.from_edges(1, []))
    assert not is_asymmetric(path_graph(2))
    # smallest asymmetric tree: path 0-1-2-3-4-5 with a pendant vertex 6 at 2
    tree = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)])
    assert is_asymmetric(tree)
    assert brute_force_aut_count(tree) == 1
    # the six-vertex candidate has a reflection (0 <-> 5 leaf swap at vertex 1)
    six = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)])
    assert brute_force_aut_count(six) == automorphism_group(six).order == 2


def test_hypercube_orders():
    for n in range(1, 4):
        assert automorphism_group(hypercube(n)).order == brute_force_aut_count(hypercube(n)) == 2 ** n * math.factorial(n)
    result = automorphism_group(hypercube(4))
    assert result.order == 384 == len(result.group().elements())


@pytest.mark.parametrize("g", [cycle_graph(n) for n in range(3, 11)] + [path_graph(n) for n in range(1, 11)]
                         + [star_graph(5), complete_graph(5), complete_bipartite_graph(3, 3),
                            hypercube(3).without_colors(), petersen_graph()],
                         ids=lambda g: repr(g))
def test_named_graphs_against_brute_force(g):
    result = automorphism_group(g)
    assert result.order == brute_force_aut_count(g)
    assert all(is_automorphism(g, gamma) for gamma in result.generators)


def test_full_corpus_against_brute_force(corpus):
    mismatches = []
    for g in corpus:
        result = automorphism_group(g)
        assert all(is_automorphism(g, gamma) for gamma in result.generators)
        if result.order != brute_force_aut_count(g):
            mismatches.append(g)
    assert len(corpus) == 13598
    assert mismatches == []


@settings(max_examples=150, deadline=None)
@given(graphs(max_vertices=8), st.data())
def test_colored_orders_against_brute_force(g, data):
    colors = [data.draw(st.integers(0, 2)) for _ in range(g.vertex_count)]
    result = automorphism_group(g, colors)
    assert result.order == brute_force_aut_count(g, colors)
    assert all(is_automorphism(g, gamma, colors) for gamma in result.generators)


@settings(max_examples=100, deadline=None)
@given(graphs(min_vertices=1, max_vertices=9), st.data())
def test_orbits_partition_and_are_closed(g, data):
    result = automorphism_group(g)
    flat = sorted(v for o in result.orbits for v in o)
    assert flat == list(range(g.vertex_count))
    where = {v: i for i, o in enumerate(result.orbits) for v in o}
    for gamma in result.generators:
        assert all(where[v] == where[gamma[v]] for v in range(g.vertex_count))


def test_color_refinement_examples():
    assert color_refinement(cycle_graph(4), [range(4)]) == [[0, 1, 2, 3]]
    cells = color_refinement(path_graph(3), [range(3)])
    assert sorted(map(sorted, cells)) == [[0, 2], [1]]
    result = build_gamma_1(2)
    cells = color_refinement(result.graph, [range(result.graph.vertex_count)])
    a_hubs = set(result.vertices_with_role("hub-A"))
    b_hubs = set(result.vertices_with_role("hub-B"))
    for c in cells:
        s = set(c)
        assert not (s & a_hubs and s - a_hubs)
        assert not (s & b_hubs and s - b_hubs)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 9).flatmap(lambda n: st.tuples(graphs(min_vertices=n, max_vertices=n), permutations(n))))
def test_color_refinement_is_relabeling_invariant(pair):
    g, perm = pair
    h = g.relabel(perm)
    c1 = color_refinement(g, [range(g.vertex_count)])
    c2 = color_refinement(h, [range(h.vertex_count)])
    assert [sorted(perm[v] for v in c) for c in c1] == [sorted(c) for c in c2]


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 9).flatmap(lambda n: st.tuples(graphs(min_vertices=n, max_vertices=n), permutations(n))))
def test_isomorphism_of_relabelings(pair):
    g, perm = pair
    h = g.relabel(perm)
    phi = find_isomorphism(g, h)
    assert phi is not None
    assert all(h.has_edge(phi[u], phi[v]) for u, v in g.edges)


@settings(max_examples=200, deadline=None)
@given(graphs(min_vertices=5, max_vertices=8), graphs(min_vertices=5, max_vertices=8))
def test_isomorphism_against_networkx(g1, g2):
    def nxg(g):
        h = nx.Graph()
        h.add_nodes_from(range(g.vertex_count))
        h.add_edges_from(g.edges)
        return h
    assert are_isomorphic(g1, g2) == nx.is_isomorphic(nxg(g1), nxg(g2))


def test_isomorphism_examples():
    assert not are_isomorphic(cycle_graph(4), path_graph(4))
    assert are_isomorphic(unary_tree(2).tree, unary_tree(2).tree)
    assert not are_isomorphic(unary_tree(2).tree, unary_tree(3).tree)
    # same degree sequence, different graphs: C6 vs two triangles
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not are_isomorphic(cycle_graph(6), two_triangles)


def test_colored_isomorphism():
    g = path_graph(3).with_colors([0, 1, 0])
    h = path_graph(3).with_colors([1, 0, 0])
    assert are_isomorphic(g, h)
    assert not are_isomorphic(g, h, colored=True)
    assert are_isomorphic(g, path_graph(3).with_colors([0, 1, 0]), colored=True)


def test_restrict_to_examples():
    c4 = automorphism_group(cycle_graph(4))
    assert restrict_to(c4, range(4)).order() == 8
    trivial = automorphism_group(unary_tree(1).tree)
    assert restrict_to(trivial, [0, 1]).order() == 1
    p3 = automorphism_group(path_graph(3))
    with pytest.raises(ValueError):
        restrict_to(p3, [0, 1])


def test_budget_exceeded_is_an_error():
    with pytest.raises(BudgetExceeded) as info:
        automorphism_group(petersen_graph(), node_limit=3)
    assert info.value.stats["nodes"] >= 3


def test_gamma3_fits_small_node_budget():
    g = build_gamma_1(3).graph
    result = automorphism_group(g, node_limit=100_000)
    assert result.order == 1
    assert result.stats["nodes"] <= 100_000


def test_result_json_is_stable():
    r1 = automorphism_group(petersen_graph()).to_json()
    r2 = automorphism_group(petersen_graph()).to_json()
    assert r1 == r2
    data = json.loads(r1)
    assert data["order"] == "120"
    assert all(x.startswith("(") for x in data["generators"])


def test_empty_graph():
    assert automorphism_group(Graph.from_edges(0, [])).order == 1
    assert automorphism_group(Graph.from_edges(4, [])).order == 24
