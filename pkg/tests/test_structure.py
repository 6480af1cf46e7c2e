from collections import Counter

from edgechroma.generators import cycle, subdivide
from edgechroma.graph import Graph
from edgechroma.structure import VertexClass, classify, core_view, find_threads, format_classification, scan_threads

V = VertexClass


def k4_subdivided_with_leaf():
    # K4 on 0..3, edge 2-3 subdivided by 4, leaf 5 on vertex 0
    return Graph(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4), (0, 5)])


def test_core_drops_degree_one_vertices_once():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    cv = core_view(g)
    assert cv.back == (1, 2)
    assert cv.pendant_neighbors[1] == frozenset({0})
    assert cv.core.m == 1


def test_classification_by_hand():
    cv = core_view(k4_subdivided_with_leaf())
    c = classify(cv.core)
    name = {cv.back[i]: i for i in range(cv.core.n)}
    got = {v: c.vclass[name[v]] for v in range(5)}
    assert got == {0: V.THREE_GOOD, 1: V.THREE_GOOD, 2: V.THREE_BAD, 3: V.THREE_BAD, 4: V.TWO_NONPOOR}
    assert c.l[name[2]] == Counter({1: 1})
    assert c.bad_8_3 == frozenset()
    assert {cv.back[v] for v in c.bad_14_5} == {2, 3}
    assert [c.bn_14_5[name[v]] for v in range(5)] == [2, 2, 0, 0, 2]
    assert c.poor == frozenset()


def test_poor_terrible_and_bad_8_3():
    # hub 0 with two 1-threads (bad for 8/3); 3-vertex 5 with two 2-neighbours (terrible)
    es = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (6, 2), (5, 7), (7, 8), (8, 4), (2, 4), (2, 9), (4, 9)]
    g = Graph(10, es)
    c = classify(g)
    assert c.degree[0] == 3 and 0 in c.bad_8_3
    # 0 and 5 each have two 2-neighbours, so every 2-vertex touches a terrible vertex or a 2-vertex
    assert c.vclass[0] is V.THREE_TERRIBLE and c.vclass[5] is V.THREE_TERRIBLE
    assert c.poor == frozenset({1, 3, 6, 7, 8})
    assert c.vclass[2] is V.FOUR_PLUS
    scan = find_threads(g)
    assert sorted(t.length for t in scan.threads) == [1, 1, 1, 1, 2]


def test_cycle_components_and_loop_threads():
    scan = scan_threads({v: list(cycle(5).neighbors(v)) for v in range(5)})
    assert [sorted(c) for c in scan.cycle_components] == [[0, 1, 2, 3, 4]]
    # two triangles through 0 give two threads whose ends coincide
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (3, 4), (4, 0)])
    t = find_threads(g).threads
    assert [(x.ends, x.interior) for x in t] == [((0, 0), (1, 2)), ((0, 0), (3, 4))]


def test_subdivided_edge_gives_thread_of_that_length():
    base = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    g = subdivide(base, (2, 3), 3)
    threads = find_threads(g).threads
    assert [(t.ends, t.length) for t in threads] == [((2, 3), 3)]


def test_classification_table_has_a_row_per_core_vertex():
    c = classify(k4_subdivided_with_leaf())
    lines = format_classification(c).splitlines()
    assert lines[0].split("\t")[:3] == ["vertex", "deg", "class"]
    assert len(lines) == 1 + 6
