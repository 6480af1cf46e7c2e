"""Coloring a sparse graph with 2D+2 (mad < 8/3) or 2D+4 (mad < 14/5) colors."""
from edgechroma.coloring import verify
from edgechroma.generators import complete, sparse_test, subdivide, subdivide_all
from edgechroma.reducer import PreconditionError, apply_and_extend, color, find_reducible, format_trace

# a single step: find a configuration, shrink, color the rest, extend back
g = subdivide(complete(4), (2, 3), 3)
step = find_reducible(g, "8/3")
print(step.describe())
res = apply_and_extend(g, step, case="8/3")
for c in res.claims:
    print("  claim", c.kind, ">=", c.bound, "observed", c.observed)

# the full descent
g = subdivide_all(complete(5), 2)
res = color(g, "8/3")
print("K5 subdivided twice:", res.colors_used, "colors, palette", res.palette,
      "valid", verify(g, res.coloring, "ss") is None)
print("\n".join(format_trace(res).splitlines()[:6]))

for case in ("8/3", "14/5"):
    g = sparse_test(case, 6, 11)
    res = color(g, case)
    print(case, "random sparse graph:", g.n, "vertices,", res.colors_used, "of", res.palette,
          "colors,", len(res.trace), "steps,", res.swaps, "swaps")

# dense inputs are refused with a witness subgraph
try:
    color(complete(4), "8/3")
except PreconditionError as e:
    print("refused:", sorted(e.witness))
