from fractions import Fraction

import pytest
from hypothesis import given, settings

from edgechroma.density import SparseBuilder, girth_mad_bound, mad, mad_below, mad_bruteforce
from edgechroma.generators import complete, cycle, cycle_join_I2, path, rng_for, star
from edgechroma.graph import Graph

from .conftest import small_graphs


def induced_edges(g, vs):
    return sum(1 for u, v in g.edges if u in vs and v in vs)


@pytest.mark.parametrize("g,value", [
    (cycle(5), Fraction(2)), (complete(4), Fraction(3)), (cycle_join_I2(7), Fraction(14, 3)),
    (path(4), Fraction(3, 2)), (star(5), Fraction(5, 3)), (Graph(3), Fraction(0)),
])
def test_mad_of_named_graphs(g, value):
    assert mad(g).value == value
    assert mad_bruteforce(g) == value


@settings(max_examples=200, deadline=None)
@given(small_graphs(max_n=10))
def test_mad_matches_exhaustive_oracle_and_witness_attains_it(g):
    r = mad(g)
    assert r.value == mad_bruteforce(g)
    w = r.witness
    assert Fraction(2 * induced_edges(g, w), len(w)) == r.value


@settings(max_examples=200, deadline=None)
@given(small_graphs(max_n=9))
def test_mad_below_agrees_with_exact_value(g):
    exact = mad_bruteforce(g)
    for b in (Fraction(2), Fraction(8, 3), Fraction(14, 5), Fraction(3)):
        chk = mad_below(g, b)
        assert chk.holds == (exact < b)
        if not chk.holds:
            assert Fraction(2 * induced_edges(g, chk.witness), len(chk.witness)) >= b


def test_mad_below_rejects_float_bounds():
    with pytest.raises(TypeError):
        mad_below(cycle(4), 2.5)


def test_mad_rejects_empty_graph():
    with pytest.raises(ValueError):
        mad(Graph(0))


@pytest.mark.parametrize("g,bound", [(7, Fraction(14, 5)), (8, Fraction(8, 3)), (3, Fraction(6)), (6, Fraction(3))])
def test_girth_mad_bound(g, bound):
    assert girth_mad_bound(g) == bound


@pytest.mark.parametrize("bound", [Fraction(8, 3), Fraction(14, 5), Fraction(5, 2)])
def test_sparse_builder_accepts_exactly_the_sparse_edges(bound):
    rng = rng_for(11, bound.numerator)
    for trial in range(15):
        n = int(rng.integers(3, 10))
        sb = SparseBuilder(n, bound)
        es = []
        for _ in range(3 * n):
            u, v = (int(x) for x in rng.integers(n, size=2))
            if u == v or (min(u, v), max(u, v)) in es:
                continue
            ok = sb.try_add(u, v)
            would = mad_bruteforce(Graph(n, es + [(min(u, v), max(u, v))])) < bound
            assert ok == would
            if ok:
                es.append((min(u, v), max(u, v)))
