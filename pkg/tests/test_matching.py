import itertools

import pytest
from hypothesis import given, settings

from edgechroma.generators import complete, complete_bipartite, cycle, path
from edgechroma.graph import Graph, GraphError
from edgechroma.matching import (
    count_perfect_matchings,
    has_unique_perfect_matching,
    induced_submatching_graph,
    is_induced_matching,
    is_matching,
    is_semistrong_matching,
    is_uniquely_restricted_matching,
)

from .conftest import small_graphs


def all_matchings(g):
    out = [()]
    for k in range(1, g.n // 2 + 1):
        for combo in itertools.combinations(g.edges, k):
            vs = [x for e in combo for x in e]
            if len(set(vs)) == len(vs):
                out.append(combo)
    return out


def brute_perfect(g):
    if g.n % 2:
        return 0
    return sum(1 for c in itertools.combinations(g.edges, g.n // 2) if len({x for e in c for x in e}) == g.n)


def span_degrees(g, m):
    vs = {x for e in m for x in e}
    return {x: sum(1 for y in g.neighbors(x) if y in vs) for x in vs}


@settings(max_examples=120, deadline=None)
@given(small_graphs(max_n=8))
def test_perfect_matching_count_matches_enumeration(g):
    assert count_perfect_matchings(g) == brute_perfect(g)


@pytest.mark.parametrize("g,count", [(complete(4), 3), (complete(6), 15), (cycle(6), 2), (complete_bipartite(3, 3), 6), (path(3), 0)])
def test_perfect_matching_counts_of_named_graphs(g, count):
    assert count_perfect_matchings(g) == count


@settings(max_examples=80, deadline=None)
@given(small_graphs(max_n=7))
def test_predicates_match_definitions(g):
    for m in all_matchings(g):
        deg = span_degrees(g, m)
        induced = all(d == 1 for d in deg.values())
        semi = all(deg[u] == 1 or deg[v] == 1 for u, v in m)
        h, _ = induced_submatching_graph(g, m)
        ur = brute_perfect(h) == 1
        assert is_matching(g, m)
        assert is_induced_matching(g, m) == induced
        assert is_semistrong_matching(g, m) == semi
        assert is_uniquely_restricted_matching(g, m) == ur
        assert has_unique_perfect_matching(h) == ur
        # induced => semistrong => uniquely restricted
        assert not induced or semi
        assert not semi or ur


def test_examples_on_a_four_cycle():
    g = cycle(4)
    assert is_semistrong_matching(g, [(0, 1)])
    assert not is_uniquely_restricted_matching(g, [(0, 1), (2, 3)])
    assert not is_semistrong_matching(g, [(0, 1), (2, 3)])
    p = path(4)
    # the middle edge of P4 is not induced but the two end edges form a semistrong, non-induced pair
    assert is_semistrong_matching(p, [(0, 1), (2, 3)])
    assert not is_induced_matching(p, [(0, 1), (2, 3)])
    assert is_uniquely_restricted_matching(p, [(0, 1), (2, 3)])


def test_non_matchings_and_non_edges():
    g = path(3)
    assert not is_matching(g, [(0, 1), (1, 2)])
    assert not is_semistrong_matching(g, [(0, 1), (1, 2)])
    with pytest.raises(GraphError):
        is_matching(g, [(0, 2)])
    with pytest.raises(GraphError):
        induced_submatching_graph(g, [(0, 1), (1, 2)])


def test_empty_matching_is_in_every_class():
    g = Graph(3, [(0, 1)])
    for pred in (is_matching, is_induced_matching, is_semistrong_matching, is_uniquely_restricted_matching):
        assert pred(g, [])
