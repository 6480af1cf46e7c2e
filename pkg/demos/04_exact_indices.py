"""Exact chromatic indices and the chain proper <= acyclic <= ur <= ss <= strong."""
from edgechroma.coloring import format_coloring, verify
from edgechroma.exact import (
    CHAIN,
    SolverTimeout,
    all_indices,
    chromatic_index,
    conflict_clique_lower_bound,
    find_coloring,
)
from edgechroma.generators import complete_bipartite, cycle, cycle_join_I2, petersen

for n in range(3, 11):
    print(f"ss(C{n}) =", chromatic_index(cycle(n), "ss").optimum)

r = chromatic_index(cycle_join_I2(4), "ss")
print("ss(C4 join I2) =", r.optimum, "after", r.nodes_explored, "nodes")
print(format_coloring(r.witness), end="")

# the whole chain for K33
res = all_indices(complete_bipartite(3, 3))
print(" <= ".join(f"{c.value} {res[c].optimum}" for c in CHAIN))

# one-sided at larger size: a clique of pairwise conflicting edges bounds from below
g = cycle_join_I2(7)
lo, _ = conflict_clique_lower_bound(g, "ss")
phi = find_coloring(g, "ss", 18)
print("C7 join I2:", lo, "<= ss <=", 18, "coloring valid:", verify(g, phi, "ss") is None)

# a node budget turns into bounds instead of an answer
try:
    chromatic_index(petersen(), "ss", budget=20)
except SolverTimeout as t:
    print("petersen ss within", t.lower, "..", t.upper)
