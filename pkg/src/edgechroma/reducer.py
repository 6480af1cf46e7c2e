"""Constructive semistrong coloring of sparse graphs by reducible configurations.

The driver repeatedly finds a reducible configuration in the current
graph, shrinks it, and records the step.  Once the graph is small it is
colored exactly, and the steps are unwound: every step maps the smaller
coloring back, applies an optional color exchange, erases a few colors
and then colors its *agenda* edges in a fixed order.

Two catalogs exist, one per density threshold:

* below 8/3 the palette is ``2D + 2`` and the progress measure is ``|V| + |E|``;
* below 14/5 the palette is ``2D + 4`` and the measure is
  ``(#vertices of degree >= 2, |E|)`` compared lexicographically.

``D`` is the maximum degree of the input and stays fixed throughout.

Each agenda item carries the lower bounds on ``|A(e)|`` or ``|SA(e)|``
that the reduction argument relies on.  They are checked against the
actual partial coloring and logged as :class:`ClaimCheck` records; the
extension itself never trusts them.  It searches the available colors
(strongly available ones first) with backtracking.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .coloring import (
    ColoringClass,
    PartialColoring,
    accepts,
    strongly_forbidden_set,
    verify,
)
from .density import mad_below
from .discharging import Case
from .graph import Edge, Graph, GraphError, edge
from .matching import pendant_in_span
from .structure import Classification, VertexClass, classify_adj

SS = ColoringClass.SEMISTRONG
START, TURN = "start", "turn"
SMALL_EDGES = 14
EXACT_EDGES = 20


class Strategy(enum.Enum):
    GREEDY_A = "greedy-A"
    GREEDY_SA = "greedy-SA"
    SWAP_THEN_GREEDY = "swap-then-greedy"


class PreconditionError(GraphError):
    def __init__(self, bound: Fraction, witness: frozenset[int] | None):
        super().__init__(f"maximum average degree is not below {bound}; dense set {sorted(witness or ())}")
        self.bound = bound
        self.witness = witness


class IrreducibleError(RuntimeError):
    def __init__(self, graph: Graph, case: Case):
        super().__init__(f"no reducible configuration found ({case.label}, {graph.n} vertices, {graph.m} edges)")
        self.graph = graph
        self.case = case


class ExtensionExhausted(RuntimeError):
    def __init__(self, tag: str, e: Edge | None, detail: str = ""):
        where = "" if e is None else f" at {e[0]}-{e[1]}"
        super().__init__(f"{tag}: extension failed{where} {detail}".rstrip())
        self.tag = tag
        self.edge = e


@dataclass(frozen=True)
class Claim:
    kind: str        # "A" or "SA"
    bound: int
    at: str = START  # START: right after the reduction; TURN: when the edge is colored
    soft: bool = False


@dataclass(frozen=True)
class AgendaItem:
    edge: Edge
    strategy: Strategy
    claims: tuple[Claim, ...] = ()
    avoid: tuple[Edge, ...] = ()    # prefer colors not used on these edges in the mapped-back coloring


@dataclass(frozen=True)
class SwapRule:
    """Exchange the colors of ``a`` and ``b`` when ``when[0]`` and ``when[1]`` share a color."""

    a: Edge
    b: Edge
    when: tuple[Edge, Edge]


@dataclass(frozen=True)
class ReductionStep:
    tag: str
    focus: tuple[int, ...]
    delete_vertices: tuple[int, ...] = ()
    delete_edges: tuple[Edge, ...] = ()
    add_pendants: tuple[Edge, ...] = ()   # (existing vertex, fresh vertex)
    erase: tuple[Edge, ...] = ()
    agenda: tuple[AgendaItem, ...] = ()
    swap: SwapRule | None = None

    def describe(self) -> str:
        parts = [self.tag, "focus=" + ",".join(map(str, self.focus))]
        if self.delete_vertices:
            parts.append("del-v=" + ",".join(map(str, self.delete_vertices)))
        if self.delete_edges:
            parts.append("del-e=" + ",".join(f"{u}-{v}" for u, v in self.delete_edges))
        if self.add_pendants:
            parts.append("add=" + ",".join(f"{u}-{v}" for u, v in self.add_pendants))
        if self.erase:
            parts.append("erase=" + ",".join(f"{u}-{v}" for u, v in self.erase))
        parts.append("agenda=" + ",".join(f"{i.edge[0]}-{i.edge[1]}" for i in self.agenda))
        return " ".join(parts)


@dataclass(frozen=True)
class ClaimCheck:
    tag: str
    edge: Edge
    kind: str
    at: str
    bound: int
    observed: int
    soft: bool

    @property
    def ok(self) -> bool:
        return self.observed >= self.bound


@dataclass
class ColorResult:
    coloring: PartialColoring
    palette: int
    trace: list[ReductionStep] = field(default_factory=list)
    claims: list[ClaimCheck] = field(default_factory=list)
    backtracks: int = 0
    swaps: int = 0

    @property
    def colors_used(self) -> int:
        return self.coloring.num_colors()

    def failed_claims(self, include_soft: bool = False) -> list[ClaimCheck]:
        return [c for c in self.claims if not c.ok and (include_soft or not c.soft)]


def palette_for(case, delta: int) -> int:
    case = Case.parse(case)
    return 2 * delta + (2 if case is Case.EIGHT_THIRDS else 4)


# --- work graphs --------------------------------------------------------------

Adj = dict[int, set[int]]


def _adj_from_graph(g: Graph) -> Adj:
    return {v: set(g.neighbors(v)) for v in range(g.n) if g.degree(v)}


def _edges_of(adj: Mapping[int, Iterable[int]]) -> set[Edge]:
    return {(u, v) for u, a in adj.items() for v in a if u < v}


def _measure(adj: Adj, case: Case) -> tuple[int, ...]:
    m = sum(len(a) for a in adj.values()) // 2
    if case is Case.EIGHT_THIRDS:
        return (len(adj) + m,)
    return (sum(1 for a in adj.values() if len(a) >= 2), m)


def _apply(adj: Adj, step: ReductionStep) -> Adj:
    h = {v: set(a) for v, a in adj.items()}
    for x in step.delete_vertices:
        for y in h.pop(x, ()):
            h[y].discard(x)
    for u, v in step.delete_edges:
        h[u].discard(v)
        h[v].discard(u)
    for w, f in step.add_pendants:
        h[w].add(f)
        h[f] = {w}
    return {v: a for v, a in h.items() if a}


# --- the structural view of one graph -------------------------------------------

class _View:
    """Degrees, pendant leaves, core adjacency and classification of a work graph."""

    def __init__(self, adj: Adj, delta: int):
        self.adj = adj
        self.D = delta
        self.leaves = {v for v, a in adj.items() if len(a) == 1}
        lv = self.leaves
        self.cadj: dict[int, list[int]] = {v: sorted(x for x in a if x not in lv)
                                           for v, a in adj.items() if v not in lv}
        self.pend: dict[int, list[int]] = {v: sorted(x for x in adj[v] if x in lv) for v in self.cadj}
        self.dC = {v: len(c) for v, c in self.cadj.items()}
        self.order = sorted(self.cadj)
        self.cls: Classification = classify_adj(self.cadj)
        self.max_core = max(self.dC.values(), default=0)

    def dG(self, v: int) -> int:
        return len(self.adj[v])

    def vc(self, v: int) -> VertexClass | None:
        return self.cls.vclass.get(v)

    def two_nbrs(self, v: int) -> list[int]:
        return [x for x in self.cadj[v] if self.dC[x] == 2]

    def other(self, x: int, v: int) -> int:
        """The core neighbour of the 2-vertex ``x`` other than ``v``."""
        a, b = self.cadj[x]
        return b if a == v else a

    def is_bad(self, v: int) -> bool:
        return self.vc(v) is VertexClass.THREE_BAD

    def is_terrible(self, v: int) -> bool:
        return self.vc(v) is VertexClass.THREE_TERRIBLE

    def is_poor(self, v: int) -> bool:
        return self.vc(v) is VertexClass.TWO_POOR


def _sa(b: int, at: str = START, soft: bool = False) -> Claim:
    return Claim("SA", b, at, soft)


def _a(b: int, at: str = START, soft: bool = False) -> Claim:
    return Claim("A", b, at, soft)


def _item(e, *claims: Claim, avoid: Iterable[Edge] = (), strategy: Strategy | None = None) -> AgendaItem:
    if strategy is None:
        strategy = Strategy.GREEDY_SA if claims and claims[0].kind == "SA" else Strategy.GREEDY_A
    return AgendaItem(edge(*e), strategy, tuple(claims), tuple(avoid))


def _leaf_edges(v: _View, x: int) -> list[Edge]:
    return [edge(x, y) for y in v.pend[x]]


# --- base steps shared by both catalogs -------------------------------------------

def _base_steps(v: _View) -> ReductionStep | None:
    adj = v.adj
    # a K2 component has no core at all
    for x in sorted(v.leaves):
        (y,) = adj[x]
        if y in v.leaves:
            return ReductionStep("isolated-edge", (x, y), delete_vertices=(x, y),
                                 agenda=(_item((x, y)),))
    for x in v.order:
        if v.dC[x] == 0:
            es = _leaf_edges(v, x)
            return ReductionStep("star-component", (x,), delete_vertices=(x, *v.pend[x]),
                                 agenda=tuple(_item(e) for e in es))
    for cyc in v.cls.scan.cycle_components:
        leaves = [y for x in sorted(cyc) for y in v.pend[x]]
        if leaves:
            es = [e for x in sorted(cyc) for e in _leaf_edges(v, x)]
            return ReductionStep("cycle-component-leaves", tuple(sorted(cyc)), delete_vertices=tuple(leaves),
                                 agenda=tuple(_item(e) for e in es))
        x = min(cyc)
        return ReductionStep("cycle-component", (x,), delete_vertices=(x,),
                             agenda=tuple(_item((x, y)) for y in sorted(adj[x])))
    return None


def _core_leaf(v: _View, bound: int) -> ReductionStep | None:
    for x in v.order:
        if v.dC[x] == 1:
            u = v.pend[x][0]
            return ReductionStep("core-leaf", (x, u), delete_vertices=(u,), agenda=(_item((x, u), _sa(bound)),))
    return None


def _delete_vertex_step(tag: str, v: _View, x: int, first: list[tuple[int, tuple[Claim, ...]]],
                        leaf_claims: tuple[Claim, ...] = (), erase: tuple[Edge, ...] = (),
                        after: list[AgendaItem] = ()) -> ReductionStep:
    items = [_item((x, y), *cl) for y, cl in first]
    items += list(after)
    items += [_item(e, *leaf_claims) for e in _leaf_edges(v, x)]
    return ReductionStep(tag, (x,), delete_vertices=(x,), erase=erase, agenda=tuple(items))


# --- catalog for mad < 8/3 ---------------------------------------------------------

def _catalog_8_3(v: _View) -> ReductionStep | None:
    D = v.D
    step = _core_leaf(v, 4)
    if step:
        return step
    threads = v.cls.scan.threads
    # long threads
    for t in threads:
        if t.length >= 3:
            inner = t.interior
            lv = [y for x in inner for y in v.pend[x]]
            if not lv:
                a, b, c = inner[0], inner[1], inner[2]
                return ReductionStep("long-thread", tuple(inner), delete_vertices=(b,),
                                     agenda=(_item((a, b), _sa(D + 1)), _item((b, c), _sa(D + 1))))
            items = []
            for i, x in enumerate(inner):
                bound = D if i in (0, len(inner) - 1) else 2 * D - 2
                items += [_item(e, _sa(bound)) for e in _leaf_edges(v, x)]
            return ReductionStep("long-thread-leaves", tuple(inner), delete_vertices=tuple(lv),
                                 agenda=tuple(items))
    # 2-threads
    for t in threads:
        if t.length != 2:
            continue
        (u1, u2), (v1, v2) = t.ends, t.interior
        for x in (v1, v2):
            if v.pend[x]:
                return ReductionStep("two-thread-interior-leaves", (x,), delete_vertices=tuple(v.pend[x]),
                                     agenda=tuple(_item(e, _a(D)) for e in _leaf_edges(v, x)))
        if u1 == u2:
            return ReductionStep("two-thread-loop", (u1, v1, v2), delete_edges=(edge(v1, v2),),
                                 agenda=(_item((v1, v2), _sa(D + 2)),))
        for a, x, y in ((u1, v1, v2), (u2, v2, v1)):
            if v.dG(a) <= 3:
                return ReductionStep("two-thread-low-end", (a, x, y), delete_vertices=(x,),
                                     agenda=(_item((a, x), _sa(1)), _item((x, y), _sa(D))))
        for a, x, y, b in ((u1, v1, v2, u2), (u2, v2, v1, u1)):
            if v.pend[a]:
                w = v.pend[a][0]
                swap = SwapRule(edge(a, x), edge(a, w), (edge(a, x), edge(y, b)))
                return ReductionStep("two-thread-end-leaf", (a, x, y, b), delete_edges=(edge(x, y),),
                                     swap=swap,
                                     agenda=(_item((x, y), _sa(2), strategy=Strategy.SWAP_THEN_GREEDY),))
    # 1-threads with a small end
    for t in threads:
        if t.length == 1:
            (u1, u2), (x,) = t.ends, t.interior
            if v.pend[x] and (v.dC[u1] <= 4 or v.dC[u2] <= 4):
                w = v.pend[x][0]
                return ReductionStep("one-thread-leaf", (x, w), delete_vertices=(w,), agenda=(_item((x, w), _a(1)),))
    l = v.cls.l
    for x in v.order:
        if v.dC[x] == 3 and l[x][1] == 3:
            return _delete_vertex_step("three-vertex-three-threads", v, x,
                                       [(y, (_sa(D),)) for y in v.cadj[x]], (_sa(2 * D - 1),))
    bad = v.cls.bad_8_3
    for x in v.order:
        if x in bad and v.pend[x]:
            u = v.pend[x][0]
            return ReductionStep("bad-vertex-leaf", (x, u), delete_vertices=(u,), agenda=(_item((x, u), _sa(2)),))
    for x in v.order:
        if x in bad:
            for y in v.cadj[x]:
                if y in bad:
                    ws = v.two_nbrs(y)
                    return _delete_vertex_step("bad-vertex-bad-neighbor", v, y,
                                               [(x, (_sa(2 * D - 4),))] + [(w, (_sa(D - 1),)) for w in ws])
    for x in v.order:
        if v.dC[x] == 3 and x not in bad and l[x][1] + v.cls.bn_8_3[x] >= 2:
            y = next(z for z in v.cadj[x] if z in bad)
            ws = v.two_nbrs(y)
            return _delete_vertex_step("three-vertex-bad-neighbors", v, y,
                                       [(x, (_sa(D - 3),))] + [(w, (_sa(D - 1),)) for w in ws])
    return _high_vertex_8_3(v)


def _high_vertex_8_3(v: _View) -> ReductionStep | None:
    D = v.D
    by_end: dict[int, list] = {}
    for t in v.cls.scan.threads:
        if t.length == 2:
            by_end.setdefault(t.ends[0], []).append((t.interior[0], t.interior[1], t.ends[1]))
            by_end.setdefault(t.ends[1], []).append((t.interior[1], t.interior[0], t.ends[0]))
    bad = v.cls.bad_8_3
    for x in v.order:
        d = v.dC[x]
        if d < 4 or x not in by_end:
            continue
        tw = sorted(by_end[x])
        l2, l1, bn = len(tw), v.cls.l[x][1], v.cls.bn_8_3[x]
        if 2 * l2 + l1 + bn <= 2 * d - 4:
            continue
        firsts = [a for a, _, _ in tw]
        es = [edge(x, a) for a in firsts]
        fs = [edge(a, b) for a, b, _ in tw]
        if l2 + l1 == d:
            a = firsts[0]
            return ReductionStep("high-vertex-all-thread-neighbors", (x, a), delete_vertices=(a,),
                                 agenda=(_item(es[0], _a(3)), _item(fs[0], _a(3))))
        if l2 == d - 1:
            return ReductionStep("high-vertex-two-threads-all-but-one", (x,), delete_vertices=tuple(firsts),
                                 agenda=tuple([_item(e, _sa(D + 1)) for e in es] + [_item(f, _sa(D + 1)) for f in fs]))
        if l2 == d - 2:
            return ReductionStep("high-vertex-two-threads-all-but-two", (x,), delete_vertices=tuple(firsts),
                                 agenda=tuple([_item(e, _a(D - 2)) for e in es] + [_item(f, _sa(D)) for f in fs]))
        # l2 == d - 3 and l1 + bn == 3
        if bn == 0:
            return ReductionStep("high-vertex-two-threads-three-weak", (x,), delete_vertices=tuple(firsts),
                                 agenda=tuple([_item(e, _a(2 * D - 5)) for e in es] + [_item(f, _sa(D - 1)) for f in fs]))
        w1 = next(y for y in v.cadj[x] if y in bad)
        xs = v.two_nbrs(w1)
        tails = [edge(b, u) for _, b, u in tw]
        items = [_item((x, w1), _a(2 * D - 6))]
        items += [_item(e, _a(2 * D - 5), avoid=(t,)) for e, t in zip(es, tails)]
        items += [_item((w1, y), _sa(D - 1), _a(D - 2, TURN)) for y in xs]
        items += [_item(f, _sa(D), _sa(2, TURN)) for f in fs]
        return ReductionStep("high-vertex-two-threads-bad-neighbor", (x, w1),
                             delete_vertices=(w1, *firsts), agenda=tuple(items))
    return None


# --- catalog for mad < 14/5 ----------------------------------------------------------

def _catalog_14_5(v: _View) -> ReductionStep | None:
    D = v.D
    step = _core_leaf(v, 6)
    if step:
        return step
    for x in v.order:
        if v.dC[x] == 2 and v.pend[x] and any(v.dC[u] <= 6 for u in v.cadj[x]):
            w = v.pend[x][0]
            return ReductionStep("thread-vertex-leaf", (x, w), delete_vertices=(w,), agenda=(_item((x, w), _a(1)),))
    for x in v.order:
        if v.vc(x) is VertexClass.THREE_SATURATED:
            return _delete_vertex_step("three-vertex-three-two-neighbors", v, x,
                                       [(y, (_sa(D + 2),)) for y in v.cadj[x]], (_sa(2 * D + 1),))
    for x in v.order:
        if v.dC[x] == 3 and all(v.is_bad(y) for y in v.cadj[x]):
            for y in v.cadj[x]:
                if v.pend[y]:
                    u = v.pend[y][0]
                    return ReductionStep("three-bad-neighbors-leaf", (x, y, u), delete_vertices=(u,),
                                         agenda=(_item((y, u), _a(3)),))
            v1 = v.cadj[x][0]
            (w1,) = v.two_nbrs(v1)
            f = edge(v1, w1)
            return _delete_vertex_step("three-bad-neighbors", v, x, [(y, (_sa(D - 1),)) for y in v.cadj[x]],
                                       (_sa(2 * D - 1),), erase=(f,), after=[_item(f, _sa(4))])
    for x in v.order:
        if v.is_terrible(x) and v.pend[x]:
            u = v.pend[x][0]
            return ReductionStep("terrible-vertex-leaf", (x, u), delete_vertices=(u,), agenda=(_item((x, u), _sa(4)),))
    for x in v.order:
        if v.is_terrible(x):
            for w in v.cadj[x]:
                if v.dC[w] == 3 and v.vc(w) is not VertexClass.THREE_GOOD:
                    ys = v.two_nbrs(x)
                    return _delete_vertex_step("terrible-vertex-weak-neighbor", v, x,
                                               [(w, (_sa(3),))] + [(y, (_sa(4),)) for y in ys])
    step = _bad_pair_near_three_vertex(v)
    if step:
        return step
    step = _poor_vertex_low_neighbor(v)
    if step:
        return step
    for x in v.order:
        poor = [y for y in v.cadj[x] if v.is_poor(y)]
        for i, a in enumerate(poor):
            for b in poor[i + 1:]:
                if b in v.adj[a]:
                    return ReductionStep("adjacent-poor-neighbors", (x, a, b), delete_edges=(edge(a, b),),
                                         agenda=(_item((a, b), _sa(D + 4)),))
    for x in v.order:
        if v.is_bad(x):
            bads = [y for y in v.cadj[x] if v.is_bad(y)]
            if len(bads) >= 2:
                ys = v.cadj[x]
                order = bads + [y for y in ys if y not in bads]
                return _delete_vertex_step("bad-triangle", v, x, [(y, (_sa(1, soft=True),)) for y in order])
    for fn in (_four_vertex_weak_neighbors, _four_vertex_poor_neighbors, _max_vertex_poor_neighbors,
               _five_vertex_three_poor, _five_vertex_two_poor, _five_vertex_one_poor,
               _max_vertex_poor_minus_two, _max_vertex_poor_minus_three):
        step = fn(v)
        if step:
            return step
    if v.max_core <= 3 and v.leaves:
        # color the subcubic core on its own, then the pendant edges
        lv = sorted(v.leaves)
        es = sorted(edge(x, y) for y in lv for x in v.adj[y])
        return ReductionStep("subcubic-core", tuple(v.order), delete_vertices=tuple(lv),
                             agenda=tuple(_item(e) for e in es))
    return None


def _bad_pair_near_three_vertex(v: _View) -> ReductionStep | None:
    D = v.D
    for x in v.order:
        if v.dC[x] != 3:
            continue
        nx = v.cadj[x]
        for u in nx:
            if not v.is_bad(u):
                continue
            rest = [y for y in nx if y != u]
            if not any(v.dC[y] <= 3 for y in rest):
                continue
            for w in v.cadj[u]:
                if w == x or w in nx or not v.is_bad(w):
                    continue
                for z in (u, w):
                    if v.pend[z]:
                        p = v.pend[z][0]
                        return ReductionStep("bad-pair-near-three-vertex-leaf", (x, u, w, p), delete_vertices=(p,),
                                             agenda=(_item((z, p), _a(3)),))
                (u1,) = v.two_nbrs(u)
                return ReductionStep("bad-pair-near-three-vertex", (x, u, w), delete_vertices=(u,),
                                     agenda=(_item((u, x), _a(1)), _item((u, w), _a(D - 1)),
                                             _item((u, u1), _a(D))))
    return None


def _poor_vertex_low_neighbor(v: _View) -> ReductionStep | None:
    D = v.D
    for u in v.order:
        if not v.is_poor(u):
            continue
        for x in v.cadj[u]:
            if not (v.dC[x] == 2 or v.is_terrible(x)):
                continue
            w = v.other(u, x)
            if v.dC[w] > D - 1:
                continue
            if v.dC[x] == 2:
                x1, x2 = v.other(x, u), None
            else:
                x2 = next(y for y in v.two_nbrs(x) if y != u)
                x1 = next(y for y in v.cadj[x] if y != u and y != x2)
            w1 = v.pend[w][0] if v.pend[w] else _FRESH
            swap = SwapRule(edge(u, w), edge(w, w1), (edge(u, w), edge(x, x1)))
            erase = () if x2 is None else (edge(x, x2),)
            items = [_item((u, x), _sa(3), strategy=Strategy.SWAP_THEN_GREEDY)]
            if x2 is not None:
                items.append(_item((x, x2), _sa(3)))
            return ReductionStep("poor-vertex-low-neighbor", (u, x, w), delete_edges=(edge(u, x),),
                                 add_pendants=((w, w1),) if w1 == _FRESH else (), erase=erase, swap=swap,
                                 agenda=tuple(items))
    return None


# placeholder label for a pendant vertex added by surgery; replaced by a fresh index in _find
_FRESH = -1


def _weak(v: _View, y: int) -> bool:
    return v.dC[y] == 2 or v.is_bad(y)


def _four_vertex_weak_neighbors(v: _View) -> ReductionStep | None:
    D = v.D
    for x in v.order:
        if v.dC[x] != 4 or not all(_weak(v, y) for y in v.cadj[x]):
            continue
        ns = v.cadj[x]
        for y in ns:
            if v.is_bad(y) and v.pend[y]:
                u = v.pend[y][0]
                return ReductionStep("four-vertex-weak-neighbors-leaf", (x, y, u), delete_vertices=(u,),
                                     agenda=(_item((y, u), _a(2)),))
        if v.pend[x]:
            u = v.pend[x][0]
            return ReductionStep("four-vertex-weak-neighbors-own-leaf", (x, u), delete_vertices=(u,),
                                 agenda=(_item((x, u), _sa(D - 3)),))
        pair = next(((a, b) for i, a in enumerate(ns) for b in ns[i + 1:] if b in v.adj[a]), None)
        if pair is not None:
            a, b = pair
            if v.dC[b] == 2 and v.dC[a] != 2:
                a, b = b, a
            others = [y for y in ns if y not in pair]
            if v.dC[a] == 2:
                items = [_item((x, y), _sa(D - 2)) for y in reversed(others)]
                items += [_item((x, b), _sa(D - 1)), _item((x, a), _sa(2 * D - 2))]
                return ReductionStep("four-vertex-weak-neighbors-adjacent", (x, a, b), delete_vertices=(x,),
                                     agenda=tuple(items))
            items = [_item((x, y), _sa(D - 2)) for y in others]
            items += [_item((x, a), _sa(2 * D - 3)), _item((x, b), _sa(2 * D - 3)), _item((a, b), _sa(2 * D))]
            return ReductionStep("four-vertex-weak-neighbors-adjacent-bad", (x, a, b), delete_vertices=(x,),
                                 erase=(edge(a, b),), agenda=tuple(items))
        bad = [y for y in ns if v.is_bad(y)]
        if not bad:
            return ReductionStep("four-vertex-two-neighbors", (x,), delete_vertices=(x,),
                                 agenda=tuple(_item((x, y), _sa(D + 1)) for y in ns))
        fs = [edge(y, v.two_nbrs(y)[0]) for y in bad]
        items = [_item((x, y), _sa(D)) for y in ns] + [_item(f, _sa(4), _a(2, TURN)) for f in fs]
        return ReductionStep("four-vertex-weak-neighbors-bad", (x,), delete_vertices=(x,), erase=tuple(fs),
                             agenda=tuple(items))
    return None


def _poor_list(v: _View, x: int) -> list[int]:
    return [y for y in v.cadj[x] if v.is_poor(y)]


def _terrible_tail(v: _View, w: int, y: int) -> Edge:
    """The edge from the terrible vertex ``w`` to its 2-neighbour other than ``y``."""
    z = next(t for t in v.two_nbrs(w) if t != y)
    return edge(w, z)


def _four_vertex_poor_neighbors(v: _View) -> ReductionStep | None:
    D = v.D
    for x in v.order:
        if v.dC[x] != 4:
            continue
        poor = _poor_list(v, x)
        if len(poor) >= 2:
            a, b = poor[0], poor[1]
            wa, wb = v.other(a, x), v.other(b, x)
            return ReductionStep("four-vertex-two-poor", (x, a, b), delete_vertices=(a, b),
                                 agenda=(_item((x, a), _sa(2)), _item((x, b), _sa(2)),
                                         _item((a, wa), _sa(D)), _item((b, wb), _sa(D))))
        if len(poor) == 1 and sum(1 for y in v.cadj[x] if v.dC[y] >= 4) < 2:
            a = poor[0]
            w = v.other(a, x)
            if v.dC[w] == 2:
                return ReductionStep("four-vertex-one-poor", (x, a), delete_vertices=(a,),
                                     agenda=(_item((x, a), _a(1)), _item((a, w), _sa(D + 1))))
            g = _terrible_tail(v, w, a)
            return ReductionStep("four-vertex-one-poor-terrible", (x, a, w), delete_vertices=(a,), erase=(g,),
                                 agenda=(_item((x, a), _a(1)), _item((a, w), _sa(D)), _item(g, _sa(4))))
    return None


def _max_vertex_poor_neighbors(v: _View) -> ReductionStep | None:
    D, top = v.D, v.max_core
    for x in v.order:
        if v.dC[x] != top:
            continue
        poor = _poor_list(v, x)
        if len(poor) >= top - 1:
            ps = poor[: top - 1]
            items = [_item((x, a), _sa(D + 2)) for a in ps]
            items += [_item((a, v.other(a, x)), _sa(D + 1), _sa(2, TURN)) for a in ps]
            return ReductionStep("max-vertex-poor-neighbors", (x,), delete_vertices=tuple(ps), agenda=tuple(items))
    return None


def _five_vertex_three_poor(v: _View) -> ReductionStep | None:
    D = v.D
    if v.max_core < 5:
        return None
    for x in v.order:
        if v.dC[x] != 5:
            continue
        poor = _poor_list(v, x)
        if len(poor) < 3:
            continue
        ps = poor[:3]
        ws = [v.other(a, x) for a in ps]
        terr = [i for i in range(3) if v.is_terrible(ws[i])]
        if not terr:
            items = [_item((x, a), _sa(3)) for a in ps] + [_item((a, w), _sa(D + 2)) for a, w in zip(ps, ws)]
            return ReductionStep("five-vertex-three-poor", (x,), delete_vertices=tuple(ps), agenda=tuple(items))
        shared = next(((i, j) for i in terr for j in terr if i < j and ws[i] == ws[j]), None)
        if len({ws[i] for i in terr}) == 1 and (len(terr) == 1 or shared is None):
            i = terr[0]
            idx = [i] + [j for j in range(3) if j != i]
            items = [_item((x, ps[idx[0]]), _sa(2))] + [_item((x, ps[j]), _sa(3)) for j in idx[1:]]
            items += [_item((ps[idx[0]], ws[idx[0]]), _sa(D))]
            items += [_item((ps[j], ws[j]), _sa(D + 2)) for j in idx[1:]]
            return ReductionStep("five-vertex-three-poor-one-terrible", (x,), delete_vertices=tuple(ps),
                                 agenda=tuple(items))
        if shared is not None:
            i, j = shared
            k = 3 - i - j
            items = [_item((x, ps[k]), _sa(2)), _item((x, ps[i]), _sa(3)), _item((x, ps[j]), _sa(3)),
                     _item((ps[k], ws[k]), _sa(D)), _item((ps[i], ws[i]), _sa(D + 2)),
                     _item((ps[j], ws[j]), _sa(D + 2))]
            return ReductionStep("five-vertex-three-poor-shared-terrible", (x,), delete_vertices=tuple(ps),
                                 agenda=tuple(items))
        gs = [_terrible_tail(v, ws[i], ps[i]) for i in terr]
        items = [_item((x, a), _sa(3)) for a in ps]
        items += [_item(g, _sa(4), _sa(3, TURN)) for g in gs]
        items += [_item((a, w), _sa(D + 1), _sa(2, TURN)) for a, w in zip(ps, ws)]
        return ReductionStep("five-vertex-three-poor-terrible", (x,), delete_vertices=tuple(ps), erase=tuple(gs),
                             agenda=tuple(items))
    return None


def _five_vertex_two_poor(v: _View) -> ReductionStep | None:
    D = v.D
    if v.max_core < 5:
        return None
    for x in v.order:
        if v.dC[x] != 5:
            continue
        poor = _poor_list(v, x)
        if len(poor) != 2 or sum(1 for y in v.cadj[x] if v.dC[y] >= 4) >= 2:
            continue
        a, b = poor
        wa, wb = v.other(a, x), v.other(b, x)
        ta, tb = v.is_terrible(wa), v.is_terrible(wb)
        if wa == wb or not (ta or tb):
            items = (_item((x, a), _a(2)), _item((x, b), _a(2)), _item((a, wa), _sa(D + 1)), _item((b, wb), _sa(D + 1)))
            return ReductionStep("five-vertex-two-poor", (x, a, b), delete_vertices=(a, b), agenda=items)
        if ta != tb:
            if tb:
                a, b, wa, wb = b, a, wb, wa
            items = (_item((x, a), _a(1)), _item((x, b), _a(2)), _item((a, wa), _sa(D - 1)), _item((b, wb), _sa(D + 1)))
            return ReductionStep("five-vertex-two-poor-one-terrible", (x, a, b), delete_vertices=(a, b), agenda=items)
        ga, gb = _terrible_tail(v, wa, a), _terrible_tail(v, wb, b)
        items = (_item((x, a), _a(2)), _item((x, b), _a(2)), _item(ga, _sa(4)), _item(gb, _sa(4)),
                 _item((a, wa), _sa(D), _sa(1, TURN)), _item((b, wb), _sa(D), _sa(1, TURN)))
        return ReductionStep("five-vertex-two-poor-terrible", (x, a, b), delete_vertices=(a, b),
                             erase=(ga, gb), agenda=items)
    return None


def _five_vertex_one_poor(v: _View) -> ReductionStep | None:
    D = v.D
    if v.max_core < 5:
        return None
    for x in v.order:
        if v.dC[x] != 5:
            continue
        poor = _poor_list(v, x)
        if len(poor) != 1 or any(v.dC[y] >= 4 for y in v.cadj[x]):
            continue
        a = poor[0]
        w = v.other(a, x)
        if v.dC[w] == 2:
            return ReductionStep("five-vertex-one-poor", (x, a), delete_vertices=(a,),
                                 agenda=(_item((x, a), _a(2 * D - 9)), _item((a, w), _sa(D))))
        g = _terrible_tail(v, w, a)
        return ReductionStep("five-vertex-one-poor-terrible", (x, a), delete_vertices=(a,), erase=(g,),
                             agenda=(_item((x, a), _a(2 * D - 9)), _item((a, w), _sa(D - 1)), _item(g, _sa(4))))
    return None


def _max_vertex_poor_minus(v: _View, short: int, tag: str) -> ReductionStep | None:
    D, top = v.D, v.max_core
    if top < 6:
        return None
    for x in v.order:
        if v.dC[x] != top:
            continue
        poor = _poor_list(v, x)
        if len(poor) != top - short:
            continue
        rest = [y for y in v.cadj[x] if y not in poor]
        if short == 2 and all(v.dC[y] >= 4 for y in rest):
            continue
        if short == 3 and any(v.dC[y] >= 4 for y in rest):
            continue
        first = _sa(D - 1) if short == 2 else _a(2 * D - 7)
        items = [_item((x, a), first) for a in poor]
        items += [_item((a, v.other(a, x)), _sa(D if short == 2 else D - 1), _sa(2, TURN)) for a in poor]
        return ReductionStep(tag, (x,), delete_vertices=tuple(poor), agenda=tuple(items))
    return None


def _max_vertex_poor_minus_two(v: _View) -> ReductionStep | None:
    return _max_vertex_poor_minus(v, 2, "max-vertex-poor-minus-two")


def _max_vertex_poor_minus_three(v: _View) -> ReductionStep | None:
    return _max_vertex_poor_minus(v, 3, "max-vertex-poor-minus-three")


# --- detection entry points -------------------------------------------------------------

def _find(adj: Adj, delta: int, case: Case, fresh: int) -> ReductionStep | None:
    view = _View(adj, delta)
    step = _base_steps(view)
    if step is None:
        step = _catalog_8_3(view) if case is Case.EIGHT_THIRDS else _catalog_14_5(view)
    if step is not None and step.add_pendants:
        step = _with_fresh(step, fresh)
    return step


def _with_fresh(step: ReductionStep, fresh: int) -> ReductionStep:
    def sub(e: Edge) -> Edge:
        return edge(*(fresh if x == _FRESH else x for x in e))

    swap = step.swap and SwapRule(sub(step.swap.a), sub(step.swap.b), step.swap.when)
    return ReductionStep(step.tag, step.focus, step.delete_vertices, step.delete_edges,
                         tuple((w, fresh) for w, _ in step.add_pendants), step.erase, step.agenda, swap)


def find_reducible(g: Graph, case) -> ReductionStep | None:
    """First matching configuration of the case's catalog, or None.

    Pendant edges added by surgery use the vertex index ``g.n``.
    """
    case = Case.parse(case)
    if g.m == 0:
        return None
    return _find(_adj_from_graph(g), g.max_degree(), case, g.n)


# --- extension ----------------------------------------------------------------------------

_NODE_CAP = 200_000


def _partial_ok(adj: Adj, phi: PartialColoring) -> bool:
    for (u, v), c in phi.items():
        mate = phi.mates(c)
        if not (pendant_in_span(adj, mate, u, v) or pendant_in_span(adj, mate, v, u)):
            return False
    return True


def _avail(adj: Adj, phi: PartialColoring, e: Edge) -> set[int]:
    return {c for c in range(1, phi.palette + 1) if accepts(adj, phi, e, c, SS)}


def _strong_avail(adj: Adj, phi: PartialColoring, e: Edge) -> set[int]:
    return set(range(1, phi.palette + 1)) - strongly_forbidden_set(adj, phi, e)


def _extend(adj: Adj, step: ReductionStep, phi_h: PartialColoring, k: int,
            claims: list[ClaimCheck]) -> tuple[PartialColoring, int, bool]:
    """Map a coloring of the reduced graph back and color the agenda; returns (coloring, backtracks, swapped)."""
    col = phi_h.as_dict()
    swapped = False
    if step.swap is not None:
        s = step.swap
        x, y = col.get(s.when[0]), col.get(s.when[1])
        if x is not None and x == y:
            col[s.a], col[s.b] = col[s.b], col[s.a]
            swapped = True
    fresh = {f for _, f in step.add_pendants}
    erase = set(step.erase)
    phi = PartialColoring(k)
    for e, c in col.items():
        if e[0] in fresh or e[1] in fresh or e in erase:
            continue
        phi.assign(e, c)
    if not _partial_ok(adj, phi):
        raise ExtensionExhausted(step.tag, None, "mapped-back coloring is not semistrong")
    items = step.agenda
    snap_sa: dict[Edge, set[int]] = {}
    for it in items:
        snap_sa[it.edge] = _strong_avail(adj, phi, it.edge)
        for cl in it.claims:
            if cl.at == START:
                obs = len(snap_sa[it.edge]) if cl.kind == "SA" else len(_avail(adj, phi, it.edge))
                claims.append(ClaimCheck(step.tag, it.edge, cl.kind, START, cl.bound, obs, cl.soft))
    avoid = [{col[f] for f in it.avoid if f in col} for it in items]
    visited = [False] * len(items)
    counter = [0, 0]   # backtracks, nodes

    def rec(i: int) -> bool:
        if i == len(items):
            return True
        counter[1] += 1
        if counter[1] > _NODE_CAP:
            raise ExtensionExhausted(step.tag, items[i].edge, "search budget exhausted")
        it = items[i]
        e = it.edge
        av = _avail(adj, phi, e)
        sa_now = _strong_avail(adj, phi, e) & av
        if not visited[i]:
            visited[i] = True
            for cl in it.claims:
                if cl.at == TURN:
                    obs = len(sa_now) if cl.kind == "SA" else len(av)
                    claims.append(ClaimCheck(step.tag, e, cl.kind, TURN, cl.bound, obs, cl.soft))
        mid = (snap_sa[e] & av) - sa_now
        order = sorted(sa_now) + sorted(mid) + sorted(av - sa_now - mid)
        if avoid[i]:
            order = [c for c in order if c not in avoid[i]] + [c for c in order if c in avoid[i]]
        for c in order:
            phi.assign(e, c)
            if rec(i + 1):
                return True
            phi.unassign(e)
            counter[0] += 1
        return False

    if not rec(0):
        raise ExtensionExhausted(step.tag, items[0].edge if items else None, "no color assignment extends")
    return phi, counter[0], swapped


def _check_agenda(adj: Adj, h: Adj, step: ReductionStep) -> None:
    missing = _edges_of(adj) - _edges_of(h) | set(step.erase)
    listed = [it.edge for it in step.agenda]
    if set(listed) != missing or len(listed) != len(missing):
        raise AssertionError(f"{step.tag}: agenda {sorted(listed)} does not match uncolored edges {sorted(missing)}")


# --- base colorings -----------------------------------------------------------------------------

def _as_graph(adj: Adj) -> tuple[Graph, list[int]]:
    back = sorted(adj)
    idx = {v: i for i, v in enumerate(back)}
    return Graph(len(back), [(idx[u], idx[v]) for u, v in _edges_of(adj)]), back


def _greedy_ss(g: Graph, k: int) -> PartialColoring | None:
    """First fit in edge order; None if more than ``k`` colors would be needed."""
    phi = PartialColoring(k)
    for u, v in g.edges:
        for c in range(1, k + 1):
            if accepts(g, phi, (u, v), c, SS):
                phi.assign((u, v), c)
                break
        else:
            return None
    return phi


def _base_coloring(adj: Adj, k: int, optimal: bool) -> PartialColoring:
    """Color a small or low-degree work graph exactly, component by component, within ``k`` colors."""
    from .exact import SolverTimeout, chromatic_index, find_coloring

    g, back = _as_graph(adj)
    out = PartialColoring(k)
    for comp in g.components():
        if len(comp) < 2:
            continue
        h, hb = g.subgraph(comp)
        phi = None
        if optimal and h.m <= EXACT_EDGES:
            try:
                phi = chromatic_index(h, SS).witness
            except SolverTimeout as exc:
                phi = exc.witness
            if phi is not None and phi.num_colors() > k:
                phi = None
        if phi is None:
            phi = _greedy_ss(h, k)
        if phi is None:
            phi = find_coloring(h, SS, k)
        if phi is None:
            raise ExtensionExhausted("exact-base", None, f"component with {h.m} edges needs more than {k} colors")
        for (a, b), c in phi.items():
            out.assign((back[hb[a]], back[hb[b]]), c)
    return out


# --- driver ---------------------------------------------------------------------------------------

def _descend_and_color(adj: Adj, delta: int, case: Case, k: int, fresh_start: int,
                       result: ColorResult, graph_for_errors: Graph) -> PartialColoring:
    stack: list[tuple[Adj, ReductionStep]] = []
    fresh = fresh_start
    cur = adj
    while True:
        m = sum(len(a) for a in cur.values()) // 2
        if m <= SMALL_EDGES:
            phi = _base_coloring(cur, k, optimal=True)
            break
        if case is Case.FOURTEEN_FIFTHS and max(len(a) for a in cur.values()) <= 3:
            phi = _base_coloring(cur, k, optimal=False)
            break
        step = _find(cur, delta, case, fresh)
        if step is None:
            raise IrreducibleError(_as_graph(cur)[0], case)
        if step.add_pendants:
            fresh += 1
        h = _apply(cur, step)
        _check_agenda(cur, h, step)
        before, after = _measure(cur, case), _measure(h, case)
        if not after < before:
            raise AssertionError(f"{step.tag}: measure did not decrease ({before} -> {after})")
        result.trace.append(step)
        stack.append((cur, step))
        cur = h
    while stack:
        g_adj, step = stack.pop()
        phi, bt, sw = _extend(g_adj, step, phi, k, result.claims)
        result.backtracks += bt
        result.swaps += sw
    return phi


def apply_and_extend(g: Graph, step: ReductionStep, recurse: Callable[[Graph], PartialColoring] | None = None,
                     case=Case.EIGHT_THIRDS, delta: int | None = None) -> ColorResult:
    """Reduce ``g`` by ``step``, color the reduced graph with ``recurse`` and extend.

    ``recurse`` receives the reduced graph on vertex set ``0..n'-1``
    (``n' = g.n`` plus one per added pendant) and must return a semistrong
    coloring of it; by default :func:`color` is used.  The palette is
    fixed by ``delta`` (default ``Δ(g)``) and the case.
    """
    case = Case.parse(case)
    delta = g.max_degree() if delta is None else delta
    k = palette_for(case, delta)
    adj = _adj_from_graph(g)
    h = _apply(adj, step)
    _check_agenda(adj, h, step)
    n_h = max([g.n - 1, *h.keys()]) + 1
    hg = Graph(n_h, sorted(_edges_of(h)))
    if recurse is None:
        sub = color(hg, case, delta=delta) if hg.m else None
        phi_h = sub.coloring if sub else PartialColoring(k)
    else:
        phi_h = recurse(hg)
    phi_h = PartialColoring(max(k, phi_h.palette), phi_h.items())
    if phi_h.num_colors() and max(phi_h.used_colors()) > k:
        raise ExtensionExhausted(step.tag, None, f"reduced coloring uses colors beyond {k}")
    res = ColorResult(PartialColoring(k), k, [step])
    phi, bt, sw = _extend(adj, step, PartialColoring(k, phi_h.items()), k, res.claims)
    res.coloring, res.backtracks, res.swaps = phi, bt, sw
    bad = verify(g, phi, SS)
    if bad is not None:
        raise AssertionError(f"{step.tag}: extension is not semistrong: {bad}")
    return res


def color(g: Graph, case, delta: int | None = None) -> ColorResult:
    """Semistrong coloring with at most ``2Δ+2`` (mad < 8/3) or ``2Δ+4`` (mad < 14/5) colors.

    Raises :class:`PreconditionError` when the density condition fails and
    :class:`IrreducibleError` if no configuration applies.  Graphs with
    maximum degree at most 3 are colored optimally per component (exactly
    when a component has at most 20 edges).
    """
    case = Case.parse(case)
    check = mad_below(g, case.value)
    if not check.holds:
        raise PreconditionError(case.value, check.witness)
    if g.m == 0:
        return ColorResult(PartialColoring(0), 0)
    D = g.max_degree() if delta is None else delta
    if D < g.max_degree():
        raise GraphError("delta must be at least the maximum degree")
    k = palette_for(case, D)
    res = ColorResult(PartialColoring(k), k)
    adj = _adj_from_graph(g)
    if D <= 3:
        phi = _base_coloring(adj, k, optimal=True)
    else:
        phi = _descend_and_color(adj, D, case, k, g.n, res, g)
    bad = verify(g, phi, SS)
    if bad is not None or len(phi) != g.m:
        raise AssertionError(f"reducer produced an invalid coloring: {bad}")
    res.coloring = phi
    return res


def format_trace(res: ColorResult) -> str:
    lines = [f"{i}\t{s.describe()}" for i, s in enumerate(res.trace)]
    fails = res.failed_claims(include_soft=True)
    for c in fails:
        lines.append(f"# claim {c.tag} {c.edge[0]}-{c.edge[1]} |{c.kind}|>={c.bound} at {c.at}: observed {c.observed}"
                     + (" (soft)" if c.soft else ""))
    return "\n".join(lines) + ("\n" if lines else "")
