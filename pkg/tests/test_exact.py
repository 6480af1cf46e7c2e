import pytest
from hypothesis import given, settings

from edgechroma.coloring import ColoringClass, verify
from edgechroma.exact import (
    CHAIN,
    SolverTimeout,
    all_indices,
    brute_force_index,
    chain_violations,
    chromatic_index,
    conflict_clique_lower_bound,
    find_coloring,
)
from edgechroma.generators import complete, complete_bipartite, cycle, path, petersen, star
from edgechroma.graph import Graph, GraphError

from .conftest import small_graphs


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_n=6))
def test_solver_matches_brute_force_on_small_graphs(g):
    if g.m == 0 or g.m > 8:
        return
    for cls in ColoringClass:
        r = chromatic_index(g, cls)
        assert r.optimum == brute_force_index(g, cls), cls
        assert verify(g, r.witness, cls) is None
        assert r.witness.num_colors() == r.optimum
        assert conflict_clique_lower_bound(g, cls)[0] <= r.optimum


@pytest.mark.parametrize("g,cls,value", [
    (path(4), "proper", 2), (cycle(4), "ss", 4), (star(3), "strong", 3), (cycle(4), "acyclic", 3),
    (cycle(7), "ss", 4), (cycle(6), "ss", 3), (cycle(7), "proper", 3), (complete(4), "proper", 3),
])
def test_known_indices(g, cls, value):
    assert chromatic_index(g, cls).optimum == value


def test_single_edge_has_all_indices_one():
    g = Graph(2, [(0, 1)])
    assert {c: r.optimum for c, r in all_indices(g).items()} == {c: 1 for c in ColoringClass}


def test_budget_exhaustion_reports_bounds():
    g = petersen()
    with pytest.raises(SolverTimeout) as info:
        chromatic_index(g, "ss", budget=20)
    exc = info.value
    assert exc.lower < exc.upper
    assert verify(g, exc.witness, "ss") is None


def test_parallel_and_serial_agree():
    g = complete_bipartite(2, 4)
    assert chromatic_index(g, "ss", jobs=2).optimum == chromatic_index(g, "ss").optimum


def test_find_coloring_respects_palette():
    g = cycle(7)
    assert find_coloring(g, "ss", 3) is None
    phi = find_coloring(g, "ss", 4)
    assert phi is not None and verify(g, phi, "ss") is None and len(phi) == g.m


def test_edgeless_and_oversized_inputs_raise():
    with pytest.raises(GraphError):
        chromatic_index(Graph(3), "proper")
    with pytest.raises(GraphError):
        brute_force_index(complete(6), "proper")


def test_chain_violation_detection():
    vals = {c: i for i, c in enumerate(CHAIN)}
    assert chain_violations(vals) == []
    vals[ColoringClass.ACYCLIC] = 10
    assert (ColoringClass.ACYCLIC, ColoringClass.UNIQUELY_RESTRICTED) in chain_violations(vals)
