"""Core graphs, threads and the vertex classification used by discharging.

The core ``G*`` of ``G`` deletes every degree-1 vertex of ``G`` at once
(not iteratively).  Inside a core, a *k-vertex* has core degree ``k``; a
*thread* is a maximal run ``v1..vl`` of 2-vertices whose two ends are
3+-vertices (the ends may coincide).

Two unrelated notions of "bad" are exposed side by side:

* ``bad_8_3``: a 3-vertex that ends two threads of length 1;
* ``bad_14_5``: a 3-vertex with exactly one 2-neighbour.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .graph import Edge, Graph, edge


class VertexClass(enum.Enum):
    TWO_POOR = "2-poor"
    TWO_NONPOOR = "2-nonpoor"
    THREE_GOOD = "3-good"
    THREE_BAD = "3-bad"
    THREE_TERRIBLE = "3-terrible"
    FOUR_PLUS = "4+"
    # outside the six-way table: core degree <= 1, and 3-vertices with three 2-neighbours
    LOW = "low"
    THREE_SATURATED = "3-saturated"


@dataclass(frozen=True)
class CoreView:
    core: Graph
    kept: dict[int, int]            # original vertex -> core index
    back: tuple[int, ...]           # core index -> original vertex
    pendant_neighbors: dict[int, frozenset[int]]
    pendant_edges: dict[int, tuple[Edge, ...]]

    def core_degree(self, v: int) -> int:
        """Core degree of original vertex ``v`` (which must be kept)."""
        return self.core.degree(self.kept[v])


def core_view(g: Graph) -> CoreView:
    leaves = {v for v in range(g.n) if g.degree(v) == 1}
    keep = [v for v in range(g.n) if v not in leaves]
    core, back = g.subgraph(keep)
    kept = {v: i for i, v in enumerate(back)}
    pn = {v: frozenset(u for u in g.neighbors(v) if u in leaves) for v in range(g.n)}
    pe = {v: tuple(sorted(edge(v, u) for u in pn[v])) for v in range(g.n)}
    return CoreView(core, kept, tuple(back), pn, pe)


@dataclass(frozen=True)
class Thread:
    ends: tuple[int, int]
    interior: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.interior)


@dataclass(frozen=True)
class ThreadScan:
    threads: tuple[Thread, ...]
    cycle_components: tuple[tuple[int, ...], ...]
    # runs of 2-vertices with an end of core degree <= 1 (absent once every core degree is >= 2)
    dangling: tuple[tuple[int, ...], ...] = ()


def _adj_of(core) -> Mapping[int, Sequence[int]]:
    if isinstance(core, Graph):
        return {v: core.neighbors(v) for v in range(core.n)}
    return core


def scan_threads(cadj: Mapping[int, Sequence[int]]) -> ThreadScan:
    """Threads, pure-cycle components and dangling runs of a core given as adjacency."""
    deg = {v: len(a) for v, a in cadj.items()}
    owner: set[int] = set()
    threads: list[Thread] = []
    dangling: list[tuple[int, ...]] = []
    for u in sorted(v for v, d in deg.items() if d >= 3):
        for x in sorted(cadj[u]):
            if deg[x] != 2 or x in owner:
                continue
            run = [x]
            prev, cur = u, x
            while True:
                a, b = cadj[cur]
                nxt = b if a == prev else a
                if deg[nxt] == 2 and nxt != x:
                    run.append(nxt)
                    prev, cur = cur, nxt
                else:
                    break
            owner.update(run)
            if deg[nxt] >= 3:
                threads.append(Thread((u, nxt), tuple(run)))
            else:
                dangling.append(tuple(run))
    cycles: list[tuple[int, ...]] = []
    for s in sorted(v for v, d in deg.items() if d == 2 and v not in owner):
        if s in owner:
            continue
        # walk both ways; a closed walk means a pure cycle
        run = [s]
        owner.add(s)
        closed = False
        for start_nb in cadj[s]:
            prev, cur = s, start_nb
            while deg[cur] == 2 and cur not in owner:
                owner.add(cur)
                run.append(cur)
                a, b = cadj[cur]
                prev, cur = cur, (b if a == prev else a)
            if cur == s:
                closed = True
                break
        if closed:
            cycles.append(tuple(run))
        else:
            dangling.append(tuple(sorted(run)))
    return ThreadScan(tuple(threads), tuple(cycles), tuple(dangling))


def find_threads(core) -> ThreadScan:
    return scan_threads(_adj_of(core))


@dataclass
class Classification:
    degree: dict[int, int]
    vclass: dict[int, VertexClass]
    l: dict[int, Counter]                 # l[v][i] = number of i-thread incidences at v
    bad_8_3: frozenset[int]
    bad_14_5: frozenset[int]
    bn_8_3: dict[int, int]
    bn_14_5: dict[int, int]
    poor: frozenset[int]
    scan: ThreadScan = field(repr=False)

    @property
    def max_degree(self) -> int:
        return max(self.degree.values(), default=0)

    def l_i(self, v: int, i: int) -> int:
        return self.l[v][i]


def classify_adj(cadj: Mapping[int, Sequence[int]], scan: ThreadScan | None = None) -> Classification:
    if scan is None:
        scan = scan_threads(cadj)
    deg = {v: len(a) for v, a in cadj.items()}
    l: dict[int, Counter] = {v: Counter() for v in cadj}
    for t in scan.threads:
        for u in t.ends:
            l[u][t.length] += 1
    vclass: dict[int, VertexClass] = {}
    for v, d in deg.items():
        if d == 3:
            k2 = sum(1 for x in cadj[v] if deg[x] == 2)
            vclass[v] = (VertexClass.THREE_GOOD, VertexClass.THREE_BAD,
                         VertexClass.THREE_TERRIBLE, VertexClass.THREE_SATURATED)[k2]
        elif d >= 4:
            vclass[v] = VertexClass.FOUR_PLUS
        elif d <= 1:
            vclass[v] = VertexClass.LOW
    poor = set()
    for v, d in deg.items():
        if d == 2:
            if any(deg[x] == 2 or vclass.get(x) is VertexClass.THREE_TERRIBLE for x in cadj[v]):
                vclass[v] = VertexClass.TWO_POOR
                poor.add(v)
            else:
                vclass[v] = VertexClass.TWO_NONPOOR
    bad83 = frozenset(v for v, d in deg.items() if d == 3 and l[v][1] == 2)
    bad145 = frozenset(v for v, c in vclass.items() if c is VertexClass.THREE_BAD)
    bn83 = {v: sum(1 for x in cadj[v] if x in bad83) for v in cadj}
    bn145 = {v: sum(1 for x in cadj[v] if x in bad145) for v in cadj}
    return Classification(deg, vclass, l, bad83, bad145, bn83, bn145, frozenset(poor), scan)


def classify(core) -> Classification:
    return classify_adj(_adj_of(core))


def format_classification(c: Classification) -> str:
    """Tab-separated table: vertex, degree, class, l_1.., bad flags and bn counts."""
    top = max((i for cnt in c.l.values() for i in cnt), default=2)
    top = max(top, 2)
    head = ["vertex", "deg", "class"] + [f"l{i}" for i in range(1, top + 1)]
    head += ["bad_8_3", "bn_8_3", "bad_14_5", "bn_14_5"]
    rows = ["\t".join(head)]
    for v in sorted(c.degree):
        row = [str(v), str(c.degree[v]), c.vclass[v].value]
        row += [str(c.l[v][i]) for i in range(1, top + 1)]
        row += [str(int(v in c.bad_8_3)), str(c.bn_8_3[v]),
                str(int(v in c.bad_14_5)), str(c.bn_14_5[v])]
        rows.append("\t".join(row))
    return "\n".join(rows) + "\n"
