"""Core graph, threads, vertex classes and the charge ledger."""
from edgechroma.discharging import deficiency_report, discharge, format_deficiencies, format_ledger, rule_totals
from edgechroma.generators import attach_pendants, complete, subdivide
from edgechroma.structure import classify, core_view, find_threads, format_classification

# K4 with one edge stretched into a path, plus two leaves on vertex 0
g = attach_pendants(subdivide(complete(4), (2, 3), 2), 0, 2)
cv = core_view(g)
print("core keeps", cv.core.n, "of", g.n, "vertices; leaves at 0:", sorted(cv.pendant_neighbors[0]))

for t in find_threads(cv.core).threads:
    print("thread", t.ends, "through", t.interior)

print(format_classification(classify(cv.core)), end="")

# charges start at core degree and move by the rules; the total never changes
for case in ("8/3", "14/5"):
    led = discharge(cv.core, case)
    print(f"-- {case}: rules", {k: str(v) for k, v in rule_totals(led).items()})
    print(format_ledger(led, cv.back), end="")
    print(format_deficiencies(deficiency_report(led), cv.back), end="")
    assert sum(led.initial.values()) == sum(led.final.values())
