from fractions import Fraction

import networkx as nx
import pytest
from networkx.generators.atlas import graph_atlas_g

from edgechroma.density import mad_below
from edgechroma.generators import (
    FamilySpec,
    cube,
    cycle_join_I2,
    dodecahedron,
    enumerate_small,
    gen,
    prism,
    sparse_test,
    subdivide_all,
)
from edgechroma.graph import GraphError, girth


def test_enumeration_matches_graph_atlas():
    # the atlas lists every graph with up to 7 vertices
    want = {}
    for h in graph_atlas_g()[1:]:
        if nx.is_connected(h):
            want[h.number_of_nodes()] = want.get(h.number_of_nodes(), 0) + 1
    got = {}
    for g in enumerate_small(7):
        assert g.is_connected()
        got[g.n] = got.get(g.n, 0) + 1
    assert got == want


def test_small_enumeration_counts():
    assert len(enumerate_small(1)) == 1
    assert [g.n for g in enumerate_small(3)].count(3) == 2


def test_enumeration_bounds():
    with pytest.raises(GraphError):
        enumerate_small(9)


def test_cycle_join_degree_profile():
    g = cycle_join_I2(6)
    assert sorted(g.degrees()) == [4] * 6 + [6, 6]


@pytest.mark.parametrize("g,n,m,gir", [(prism(5), 10, 15, 4), (cube(), 8, 12, 4), (dodecahedron(), 20, 30, 5)])
def test_named_families(g, n, m, gir):
    assert (g.n, g.m, girth(g)) == (n, m, gir)


def test_subdivision_scales_girth():
    assert girth(subdivide_all(cube(), 1)) == 8


@pytest.mark.parametrize("case", ["8/3", "14/5"])
@pytest.mark.parametrize("delta", [4, 6, 8])
def test_sparse_test_postconditions(case, delta):
    for seed in range(15):
        g = sparse_test(case, delta, seed)
        assert g.max_degree() == delta
        assert g.n <= 60 and g.is_connected()
        assert mad_below(g, Fraction(case)).holds
        assert g == sparse_test(case, delta, seed)


def test_gen_registry():
    assert gen(FamilySpec("prism", (3,))) == prism(3)
    assert gen(FamilySpec("subdivide_all:cube", (1,))) == subdivide_all(cube(), 1)
    assert gen(FamilySpec("sparse_test", (8, 3, 5), seed=4)) == sparse_test("8/3", 5, 4)
    with pytest.raises(GraphError):
        gen(FamilySpec("nope"))
    with pytest.raises(GraphError):
        gen(FamilySpec("prism", (3, 4)))
