import json
from fractions import Fraction
from pathlib import Path

import pytest

from edgechroma.coloring import PartialColoring, verify
from edgechroma.density import mad
from edgechroma.exact import chromatic_index
from edgechroma.generators import attach_pendants, complete, cycle, path, sparse_test, star, subdivide
from edgechroma.graph import Graph, GraphError
from edgechroma.reducer import (
    AgendaItem,
    ExtensionExhausted,
    PreconditionError,
    ReductionStep,
    Strategy,
    _adj_from_graph,
    _apply,
    _measure,
    apply_and_extend,
    color,
    find_reducible,
    format_trace,
    palette_for,
)
from edgechroma.discharging import Case

DATA = Path(__file__).parent / "data"


def load_catalog(name):
    raw = json.loads((DATA / name).read_text())
    return sorted((tag, Graph(n, es)) for tag, (n, es) in raw.items())


CATALOG = [("8/3", t, g) for t, g in load_catalog("catalog_8_3.json")]
CATALOG += [("14/5", t, g) for t, g in load_catalog("catalog_14_5.json")]


@pytest.mark.parametrize("case,tag,g", CATALOG, ids=[f"{c}-{t}" for c, t, _ in CATALOG])
def test_catalog_entry_detects_reduces_and_extends(case, tag, g):
    c = Case.parse(case)
    assert mad(g).value < c.value
    step = find_reducible(g, case)
    assert step.tag == tag
    adj = _adj_from_graph(g)
    assert _measure(_apply(adj, step), c) < _measure(adj, c)
    res = apply_and_extend(g, step, case=case)
    assert verify(g, res.coloring, "ss") is None
    assert len(res.coloring) == g.m
    assert res.colors_used <= palette_for(case, g.max_degree())
    assert res.failed_claims() == []


def test_long_thread_on_subdivided_k4():
    g = subdivide(complete(4), (2, 3), 3)
    step = find_reducible(g, "8/3")
    assert step.tag == "long-thread"
    assert step.delete_vertices == (5,)
    res = apply_and_extend(g, step, case="8/3")
    # the two interior edges are promised at least D+1 strongly available colours
    assert [(c.kind, c.bound) for c in res.claims] == [("SA", 4), ("SA", 4)]
    assert all(c.ok for c in res.claims)
    assert res.colors_used <= 8


def test_pendant_at_core_one_vertex_is_removed_first():
    # vertex 1 keeps a single core neighbour once its leaves 0 and 6 are set aside
    g = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 2), (1, 6)])
    step = find_reducible(g, "8/3")
    assert step.tag == "core-leaf"
    assert step.delete_vertices == (0,)


@pytest.mark.parametrize("case", ["8/3", "14/5"])
def test_k4_has_no_reducible_configuration(case):
    assert find_reducible(complete(4), case) is None


@pytest.mark.parametrize("case", ["8/3", "14/5"])
def test_dense_input_is_rejected_with_witness(case):
    g = attach_pendants(complete(4), 0, 3)
    with pytest.raises(PreconditionError) as info:
        color(g, case)
    w = info.value.witness
    inside = sum(1 for u, v in g.edges if u in w and v in w)
    assert Fraction(2 * inside, len(w)) >= Fraction(case)


def test_cycle_nine_uses_three_colors():
    res = color(cycle(9), "8/3")
    assert res.colors_used == 3
    assert res.trace == []


def star_of_stars(arms, leaves):
    es = [(0, i) for i in range(1, arms + 1)]
    nxt = arms + 1
    for i in range(1, arms + 1):
        for _ in range(leaves):
            es.append((i, nxt))
            nxt += 1
    return Graph(nxt, es)


@pytest.mark.parametrize("g,limit", [(star_of_stars(4, 3), 10), (star_of_stars(5, 4), 12), (star(5), 12)])
def test_trees_stay_within_palette(g, limit):
    res = color(g, "8/3")
    assert verify(g, res.coloring, "ss") is None
    assert res.colors_used <= limit


@pytest.mark.parametrize("case", ["8/3", "14/5"])
def test_small_graphs_never_beat_the_exact_optimum(case):
    for seed in range(12):
        g = sparse_test(case, 4, seed, max_vertices=12)
        if g.m > 14:
            continue
        res = color(g, case)
        opt = chromatic_index(g, "ss").optimum
        assert opt <= res.colors_used <= palette_for(case, 4)


@pytest.mark.parametrize("case", ["8/3", "14/5"])
def test_trace_measure_decreases_and_swaps_verify(case):
    c = Case.parse(case)
    swaps = 0
    for seed in range(25):
        g = sparse_test(case, 5, seed)
        res = color(g, case)
        assert verify(g, res.coloring, "ss") is None
        adj = _adj_from_graph(g)
        fresh = g.n
        for step in res.trace:
            h = _apply(adj, step)
            assert _measure(h, c) < _measure(adj, c)
            adj = h
            fresh += bool(step.add_pendants)
        swaps += res.swaps
    assert swaps > 0


def test_added_pendant_is_dropped_on_return():
    g = dict(load_catalog("catalog_14_5.json"))["poor-vertex-low-neighbor"]
    step = find_reducible(g, "14/5")
    if step.add_pendants:
        assert step.add_pendants[0][1] == g.n
    res = apply_and_extend(g, step, case="14/5")
    assert all(max(e) < g.n for e in res.coloring)


def test_mismatched_agenda_is_rejected():
    g = path(4)
    step = ReductionStep("bogus", (0,), delete_vertices=(0,), agenda=())
    with pytest.raises(AssertionError):
        apply_and_extend(g, step)


def test_invalid_reduced_coloring_is_not_silently_repaired():
    g = path(7)
    step = ReductionStep("drop-end", (5,), delete_vertices=(6,),
                         agenda=(AgendaItem((5, 6), Strategy.GREEDY_A),))

    def recurse(h):
        # the middle edge 2-3 of this class has no pendant end
        return PartialColoring(6, {(0, 1): 1, (2, 3): 1, (4, 5): 1, (1, 2): 2, (3, 4): 3})

    with pytest.raises(ExtensionExhausted):
        apply_and_extend(g, step, recurse=recurse)


def test_claim_shortfall_is_recorded_not_fatal():
    # the 3-vertex of this configuration has pendant leaves, which the literal bound does not allow for
    g = sparse_test("8/3", 8, 93)
    res = color(g, "8/3")
    assert verify(g, res.coloring, "ss") is None
    short = res.failed_claims()
    assert {c.tag for c in short} == {"three-vertex-bad-neighbors"}
    assert all(c.observed < c.bound for c in short)
    assert "# claim three-vertex-bad-neighbors" in format_trace(res)


def test_empty_graph_and_delta_override():
    assert len(color(Graph(3), "8/3").coloring) == 0
    res = color(path(5), "14/5", delta=4)
    assert res.palette == 12
    with pytest.raises(GraphError):
        color(star(5), "8/3", delta=4)
