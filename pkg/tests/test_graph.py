import math

import networkx as nx
import pytest
from hypothesis import given, settings

from edgechroma.graph import (
    Graph,
    GraphError,
    edge,
    edge_distance,
    format_dot,
    format_edge_list,
    girth,
    parse_dot,
    parse_edge_list,
)
from edgechroma.generators import complete, cycle, path, petersen, prism

from .conftest import small_graphs


def brute_girth(g):
    h = g.to_networkx()
    lengths = [len(c) for c in nx.simple_cycles(h) if len(c) >= 3]
    return min(lengths, default=math.inf)


def test_edges_are_normalised_and_sorted():
    g = Graph(4, [(3, 0), (1, 2), (2, 0)])
    assert g.edges == ((0, 2), (0, 3), (1, 2))
    assert edge(5, 1) == (1, 5)


@pytest.mark.parametrize("es", [[(0, 0)], [(0, 1), (1, 0)], [(0, 4)], [(0,)]])
def test_rejects_loops_multi_edges_and_bad_endpoints(es):
    with pytest.raises(GraphError):
        Graph(3, es)


def test_degrees_and_neighbours():
    g = prism(3)
    assert g.degrees() == [3] * 6
    assert g.neighbors(0) == (1, 2, 3)
    assert g.max_degree() == g.min_degree() == 3


@pytest.mark.parametrize("g,expected", [
    (cycle(3), 3), (cycle(7), 7), (petersen(), 5), (prism(4), 4), (path(5), math.inf), (complete(4), 3),
])
def test_girth_of_named_graphs(g, expected):
    assert girth(g) == expected


@settings(max_examples=150, deadline=None)
@given(small_graphs(max_n=9))
def test_girth_matches_cycle_enumeration(g):
    assert girth(g) == brute_girth(g)


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_n=7))
def test_edge_distance_matches_line_graph(g):
    if g.m == 0:
        return
    lg = nx.line_graph(g.to_networkx())
    sp = dict(nx.all_pairs_shortest_path_length(lg))
    for e in g.edges:
        for f in g.edges:
            want = sp[e].get(f, math.inf) if e in sp else math.inf
            assert edge_distance(g, e, f) == want


@settings(max_examples=80, deadline=None)
@given(small_graphs(max_n=8))
def test_edge_list_and_dot_round_trip(g):
    text = format_edge_list(g)
    assert parse_edge_list(text) == g
    assert format_edge_list(parse_edge_list(text)) == text
    assert parse_dot(format_dot(g)) == g


def test_edge_list_format_details():
    g = parse_edge_list("# a comment\np 3 2\ne 0 1  # trailing\n\ne 1 2\n")
    assert g.edges == ((0, 1), (1, 2))
    assert format_edge_list(g) == "p 3 2\ne 0 1\ne 1 2\n"


@pytest.mark.parametrize("text", ["e 0 1\n", "p 3 2\ne 0 1\n", "p 2 1\ne 0 x\n", "p 2 1\nq 0 1\n", "p 2 1\ne 0 1\ne 0 1\n"])
def test_malformed_edge_lists_raise(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)


def test_components_and_subgraph():
    g = Graph(6, [(0, 1), (1, 2), (4, 5)])
    assert sorted(map(sorted, g.components())) == [[0, 1, 2], [3], [4, 5]]
    h, back = g.subgraph([1, 2, 5])
    assert back == [1, 2, 5]
    assert h.edges == ((0, 1),)
