import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minkidp.graph import (
    Cycle,
    Graph,
    bipartition,
    chordless_cycles,
    common_vertex_condition,
    find_even_cycle,
    graph_sum,
    induced_odd_cycles,
    is_connected,
    is_subgraph,
    odd_cycle_condition,
    two_connected_components,
)
from minkidp.suite import load_reconstructions
from oracles import (
    common_vertex_all_cycles,
    has_even_cycle_brute,
    induced_cycles_brute,
    occ_all_cycles,
    occ_brute,
)

BRIDGED = Graph(6, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)])
PATH_JOINED = Graph(7, [(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (3, 7), (4, 7)])


def cycle_graph(n):
    return Graph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete(n):
    return Graph(n, itertools.combinations(range(1, n + 1), 2))


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


@st.composite
def connected_graphs(draw, min_n=2, max_n=7):
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(2, n + 1):
        edges.add((draw(st.integers(1, v - 1)), v))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    edges |= set(draw(st.lists(st.sampled_from(pairs), unique=True, max_size=10)))
    return Graph(n, edges)


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(3, [(1, 4)])
    g = Graph(3, [(2, 1), (1, 2)])
    assert g.sorted_edges == [(1, 2)] and g.has_edge(2, 1)


def test_connectivity_examples():
    assert is_connected(Graph(2, [(1, 2)]))
    assert not is_connected(Graph(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]))
    assert is_connected(BRIDGED)
    assert is_connected(Graph(1))


def test_bipartition_examples():
    assert bipartition(cycle_graph(4)) == ((1, 3), (2, 4))
    assert bipartition(complete(3)) is None
    assert bipartition(Graph(3, [(1, 2), (2, 3)])) == ((1, 3), (2,))


def test_induced_odd_cycle_examples():
    assert induced_odd_cycles(cycle_graph(5)) == [Cycle((1, 2, 3, 4, 5))]
    assert len(induced_odd_cycles(complete(4))) == 4
    assert all(c.length == 3 for c in induced_odd_cycles(complete(4)))
    assert induced_odd_cycles(cycle_graph(6)) == []


def test_cycle_canonical_form():
    assert Cycle.canonical([3, 1, 2]) == Cycle((1, 2, 3))
    assert Cycle.canonical([4, 3, 2, 1]) == Cycle((1, 2, 3, 4))
    c = Cycle((1, 2, 3, 4, 5))
    assert c.parity == 1 and c.edges()[-1] == (1, 5)


def test_cycle_condition_examples():
    assert odd_cycle_condition(cycle_graph(6))
    assert odd_cycle_condition(BRIDGED)
    assert not odd_cycle_condition(PATH_JOINED)
    assert not common_vertex_condition(BRIDGED)
    assert common_vertex_condition(cycle_graph(4))
    two_pentagons = Graph(9, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (5, 6), (6, 7), (7, 8), (8, 9), (9, 5)])
    assert common_vertex_condition(two_pentagons)
    with pytest.raises(ValueError):
        odd_cycle_condition(Graph(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]))
    with pytest.raises(ValueError):
        common_vertex_condition(Graph(3, [(1, 2)]))


def test_two_connected_component_examples():
    tri = complete(3)
    assert [c.edges for c in two_connected_components(tri)] == [tri.edges]
    path = two_connected_components(Graph(3, [(1, 2), (2, 3)]))
    assert sorted(c.sorted_edges for c in path) == [[(1, 2)], [(2, 3)]]
    bowtie = Graph(5, [(1, 2), (2, 5), (1, 5), (3, 4), (4, 5), (3, 5)])
    comps = two_connected_components(bowtie)
    assert sorted(len(c.edges) for c in comps) == [3, 3]


def test_graph_sum_and_subgraph_examples():
    m1 = Graph(6, [(1, 2), (3, 4), (5, 6)])
    m2 = Graph(6, [(1, 6), (2, 3), (4, 5)])
    assert graph_sum([m1, m2]).edges == cycle_graph(6).edges
    assert graph_sum([m1, m1]) == m1
    assert graph_sum([m1, Graph(6)]) == m1
    assert is_subgraph(m1, m1)
    assert is_subgraph(Graph(3, [(1, 2)]), complete(3))
    with pytest.raises(ValueError):
        graph_sum([m1, Graph(5)])
    with pytest.raises(ValueError):
        is_subgraph(m1, Graph(5))


def test_reconstructed_not_nested_pair():
    entry = load_reconstructions()["not-nested"]
    g1, g2 = (Graph(entry["n"], es) for es in entry["graphs"])
    assert not is_subgraph(g2, g1)


@given(graphs())
def test_chordless_cycles_match_brute_force(g):
    got = sorted(frozenset(c.vertices) for c in chordless_cycles(g))
    assert got == sorted(induced_cycles_brute(g.n, g.sorted_edges))
    keys = [c.vertices for c in chordless_cycles(g)]
    assert len(keys) == len(set(keys))
    for c in induced_odd_cycles(g):
        assert c.parity == 1 and Cycle.canonical(c.vertices) == c
        assert all(g.has_edge(*e) for e in c.edges())


@given(graphs())
def test_bipartite_iff_no_odd_cycle(g):
    h = nx.Graph()
    h.add_nodes_from(range(1, g.n + 1))
    h.add_edges_from(g.edges)
    part = bipartition(g)
    assert (part is not None) == nx.is_bipartite(h) == (not induced_odd_cycles(g))
    if part is not None:
        u, v = map(set, part)
        assert u | v == set(range(1, g.n + 1)) and not u & v
        assert all((i in u) != (j in u) for i, j in g.edges)


@given(graphs())
def test_connectivity_matches_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(1, g.n + 1))
    h.add_edges_from(g.edges)
    assert is_connected(g) == nx.is_connected(h)


@settings(max_examples=60)
@given(connected_graphs())
def test_conditions_match_all_cycle_oracles(g):
    es = g.sorted_edges
    occ = odd_cycle_condition(g)
    assert occ == occ_brute(g.n, es) == occ_all_cycles(g.n, es)
    cvc = common_vertex_condition(g)
    assert cvc == common_vertex_all_cycles(g.n, es)
    if cvc:
        assert occ


@given(graphs())
def test_components_match_networkx(g):
    h = nx.Graph(list(g.edges))
    expected = sorted(sorted(tuple(sorted(e)) for e in c) for c in nx.biconnected_component_edges(h)) if g.edges else []
    assert sorted(c.sorted_edges for c in two_connected_components(g)) == expected


@given(graphs(max_n=7))
def test_even_cycle_search_matches_brute_force(g):
    c = find_even_cycle(g)
    assert (c is not None) == has_even_cycle_brute(g.n, g.sorted_edges)
    if c is not None:
        assert c.parity == 0 and len(set(c.vertices)) == c.length
        assert all(g.has_edge(*e) for e in c.edges())


def test_even_cycle_regression_block_with_even_base_cycle():
    g = Graph(7, [(1, 2), (1, 3), (1, 5), (1, 7), (2, 3), (2, 6), (3, 4), (4, 5), (4, 6), (6, 7)])
    c = find_even_cycle(g)
    assert c is not None and c.parity == 0
    assert all(g.has_edge(*e) for e in c.edges())


@settings(max_examples=200)
@given(connected_graphs(min_n=4, max_n=7))
def test_even_cycle_search_on_dense_graphs(g):
    c = find_even_cycle(g)
    assert (c is not None) == has_even_cycle_brute(g.n, g.sorted_edges)
    if c is not None:
        assert c.parity == 0 and len(set(c.vertices)) == c.length
        assert all(g.has_edge(*e) for e in c.edges())
