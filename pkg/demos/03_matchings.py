"""Induced, semistrong and uniquely restricted matchings on a 6-cycle with a chord."""
from edgechroma.graph import Graph
from edgechroma.matching import (
    alternating_cycle,
    count_perfect_matchings,
    induced_submatching_graph,
    is_induced_matching,
    is_semistrong_matching,
    is_uniquely_restricted_matching,
    mate_map,
)

g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])

for m in [[(0, 1), (3, 4)], [(1, 2), (4, 5)], [(0, 1), (2, 3), (4, 5)]]:
    h, _ = induced_submatching_graph(g, m)
    print(m)
    print("  induced", is_induced_matching(g, m),
          " semistrong", is_semistrong_matching(g, m),
          " uniquely restricted", is_uniquely_restricted_matching(g, m))
    # uniquely restricted means the covered vertices span exactly one perfect matching
    print("  perfect matchings of the span:", count_perfect_matchings(h))
    cyc = alternating_cycle({v: g.neighbors(v) for v in range(g.n)}, mate_map(m))
    if cyc:
        print("  alternating cycle", cyc)
