"""Graphs, distances and the two file formats."""
from edgechroma.graph import edge_distance, format_edge_list, girth, parse_edge_list
from edgechroma.generators import cycle_join_I2, path, petersen, prism

g = cycle_join_I2(7)  # a 7-cycle with two extra vertices joined to every cycle vertex
print("vertices", g.n, "edges", g.m, "max degree", g.max_degree())
print("degree of a cycle vertex", g.degree(0), "and of a hub", g.degree(7))

# distance between edges is measured in the line graph
p = path(4)
print("P4 outer edges are", edge_distance(p, (0, 1), (2, 3)), "apart")

# girth is inf for forests
for name, h in [("prism(5)", prism(5)), ("petersen", petersen()), ("path(6)", path(6))]:
    print(name, "girth", girth(h))

# the edge list format round-trips
text = format_edge_list(prism(3))
print(text, end="")
assert parse_edge_list(text).edges == prism(3).edges
