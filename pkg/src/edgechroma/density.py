"""Exact maximum average degree.

``mad(G)`` is twice the maximum edge density ``|E(H)|/|V(H)|`` over
nonempty subgraphs ``H``.  Densities are decided exactly with a
Goldberg-style min cut on integer capacities and the optimum is pinned
down by a rational search whose answer always comes from an actual
subgraph, so every returned value carries a witness.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .graph import Graph


@dataclass(frozen=True)
class MadResult:
    value: Fraction
    witness: frozenset[int]


@dataclass(frozen=True)
class MadCheck:
    """Outcome of ``mad(G) < bound``; on failure ``witness`` induces average degree >= bound."""

    holds: bool
    witness: frozenset[int] | None

    def __bool__(self) -> bool:
        return self.holds


class _Dinic:
    __slots__ = ("n", "head", "to", "cap", "nxt")

    def __init__(self, n: int):
        self.n = n
        self.head = [-1] * n
        self.to: list[int] = []
        self.cap: list[int] = []
        self.nxt: list[int] = []

    def add(self, u: int, v: int, c: int, rc: int = 0) -> None:
        self.to += (v, u)
        self.cap += (c, rc)
        k = len(self.to)
        self.nxt += (self.head[u], self.head[v])
        self.head[u] = k - 2
        self.head[v] = k - 1

    def maxflow(self, s: int, t: int) -> int:
        flow = 0
        to, cap, nxt, head = self.to, self.cap, self.nxt, self.head
        while True:
            level = [-1] * self.n
            level[s] = 0
            q = deque([s])
            while q:
                x = q.popleft()
                a = head[x]
                while a >= 0:
                    if cap[a] > 0 and level[to[a]] < 0:
                        level[to[a]] = level[x] + 1
                        q.append(to[a])
                    a = nxt[a]
            if level[t] < 0:
                return flow
            it = head[:]
            while True:
                pushed = self._augment(s, t, level, it)
                if not pushed:
                    break
                flow += pushed

    def _augment(self, s: int, t: int, level: list[int], it: list[int]) -> int:
        # iterative blocking-flow DFS that finds one augmenting path
        to, cap, nxt = self.to, self.cap, self.nxt
        path: list[int] = []
        x = s
        while True:
            if x == t:
                f = min(cap[a] for a in path)
                for a in path:
                    cap[a] -= f
                    cap[a ^ 1] += f
                return f
            a = it[x]
            while a >= 0 and not (cap[a] > 0 and level[to[a]] == level[x] + 1):
                a = nxt[a]
            it[x] = a
            if a >= 0:
                path.append(a)
                x = to[a]
                continue
            if x == s:
                return 0
            level[x] = -1  # dead end
            a = path.pop()
            x = to[a ^ 1]
            it[x] = nxt[it[x]]

    def reaches(self, t: int) -> list[bool]:
        """Vertices that can still reach ``t`` in the residual network."""
        seen = [False] * self.n
        seen[t] = True
        q = deque([t])
        to, cap, nxt, head = self.to, self.cap, self.nxt, self.head
        while q:
            x = q.popleft()
            a = head[x]
            while a >= 0:
                # arc a goes x -> to[a]; its reverse a^1 goes to[a] -> x
                y = to[a]
                if not seen[y] and cap[a ^ 1] > 0:
                    seen[y] = True
                    q.append(y)
                a = nxt[a]
        return seen


def _two_core(g: Graph) -> list[int]:
    deg = g.degrees()
    alive = [True] * g.n
    stack = [v for v in range(g.n) if deg[v] < 2]
    for v in stack:
        alive[v] = False
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if alive[y]:
                deg[y] -= 1
                if deg[y] < 2:
                    alive[y] = False
                    stack.append(y)
    return [v for v in range(g.n) if alive[v]]


def _dense_witness(g: Graph, verts: list[int], density: Fraction) -> frozenset[int] | None:
    """A nonempty vertex set inducing edge density >= ``density``, or None.

    Restricted to the induced subgraph on ``verts``.  Among all optimal
    cuts the maximal source side is returned.
    """
    p, q = density.numerator, density.denominator
    idx = {v: i for i, v in enumerate(verts)}
    nv = len(verts)
    if nv == 0:
        return None
    es = [(idx[u], idx[v]) for u, v in g.edges if u in idx and v in idx]
    m = len(es)
    deg = [0] * nv
    for a, b in es:
        deg[a] += 1
        deg[b] += 1
    s, t = nv, nv + 1
    net = _Dinic(nv + 2)
    big = q * m
    for i in range(nv):
        net.add(s, i, big)
        net.add(i, t, big + 2 * p - q * deg[i])
    for a, b in es:
        net.add(a, b, q, q)
    net.maxflow(s, t)
    sink_side = net.reaches(t)
    side = [verts[i] for i in range(nv) if not sink_side[i]]
    return frozenset(side) if side else None


def _edges_within(g: Graph, vs: frozenset[int]) -> int:
    return sum(1 for u, v in g.edges if u in vs and v in vs)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"bound must be an exact rational (int, Fraction or 'p/q'), got {type(x).__name__}")


def mad(g: Graph) -> MadResult:
    """Exact maximum average degree with a subgraph attaining it."""
    if g.n == 0:
        raise ValueError("mad is undefined for the empty graph")
    core = _two_core(g)
    if not core:
        # forest: the best subgraph is the largest tree component
        best = max(g.components(), key=len)
        k = len(best)
        return MadResult(Fraction(2 * (k - 1), k), frozenset(best))
    n = len(core)
    best = frozenset(core)
    lo = Fraction(_edges_within(g, best), n)
    hi = Fraction(n, 2)  # strictly above the density of any n-vertex graph
    gap = Fraction(1, n * (n - 1)) if n > 1 else Fraction(1)
    while hi - lo >= gap:
        mid = (lo + hi) / 2
        w = _dense_witness(g, core, mid)
        if w is None:
            hi = mid
        else:
            best = w
            lo = Fraction(_edges_within(g, w), len(w))
    # any density in (lo, hi) would be within 1/(n(n-1)) of lo, so lo is optimal
    return MadResult(2 * lo, best)


def mad_below(g: Graph, bound) -> MadCheck:
    """Decide ``mad(g) < bound`` exactly; one max-flow call."""
    b = _as_fraction(bound)
    if g.n == 0 or b > 2 * max(g.n - 1, 0):
        return MadCheck(True, None)
    if b <= 0:
        return MadCheck(False, frozenset([0]))
    if b >= 2:
        verts = _two_core(g)
    else:
        verts = list(range(g.n))
    w = _dense_witness(g, verts, b / 2)
    return MadCheck(w is None, w)


def mad_bruteforce(g: Graph) -> Fraction:
    """Exhaustive maximum over all vertex subsets; for cross-checking, ``n <= 20``."""
    import numpy as np

    n = g.n
    if n == 0:
        raise ValueError("mad is undefined for the empty graph")
    if n > 20:
        raise ValueError("exhaustive mad is limited to 20 vertices")
    masks = g.masks
    size = 1 << n
    ecount = np.zeros(size, dtype=np.int64)
    for i in range(n):
        lo = 1 << i
        below = np.arange(lo, dtype=np.int64)
        ecount[lo : 2 * lo] = ecount[:lo] + np.bitwise_count(below & masks[i])
    vcount = np.bitwise_count(np.arange(size, dtype=np.int64)).astype(np.int64)
    vcount[0] = 1
    dens = ecount / vcount
    k = int(np.argmax(dens))
    # denominators are <= 20 so distinct densities differ by far more than float error
    return Fraction(2 * int(ecount[k]), int(vcount[k]))


def girth_mad_bound(girth_value) -> Fraction:
    """Upper bound on mad for planar graphs of the given girth: 2g/(g-2)."""
    gv = int(girth_value)
    if gv < 3:
        raise ValueError("girth must be at least 3")
    return Fraction(2 * gv, gv - 2)


class SparseBuilder:
    """Incremental exact test of ``mad < p/q`` while edges are added one by one.

    ``2|E(H)| < (p/q)|V(H)|`` for all ``H`` is the same as every vertex set
    spanning at most ``p|V(H)| - 1`` edges once each edge is repeated ``2q``
    times, which a (p, 1) pebble game decides edge by edge.
    """

    def __init__(self, n: int, bound):
        b = _as_fraction(bound)
        if b <= 0:
            raise ValueError("bound must be positive")
        self.k = b.numerator
        self.copies = 2 * b.denominator
        self.pebbles = [self.k] * n
        self.out: list[list[int]] = [[] for _ in range(n)]

    def add_vertex(self) -> int:
        self.pebbles.append(self.k)
        self.out.append([])
        return len(self.pebbles) - 1

    def _gather(self, u: int, avoid: int) -> bool:
        """Move one free pebble onto ``u`` along directed edges, not touching ``avoid``."""
        out, peb = self.out, self.pebbles
        parent = {u: None}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in out[x]:
                if y in parent or y == avoid:
                    continue
                parent[y] = x
                if peb[y] > 0:
                    # reverse the path u -> ... -> y
                    peb[y] -= 1
                    peb[u] += 1
                    while parent[y] is not None:
                        p = parent[y]
                        out[p].remove(y)
                        out[y].append(p)
                        y = p
                    return True
                stack.append(y)
        return False

    def _insert_copy(self, u: int, v: int) -> bool:
        peb = self.pebbles
        while peb[u] + peb[v] < 2:
            if not (self._gather(u, v) or self._gather(v, u)):
                return False
        tail, head = (u, v) if peb[u] > 0 else (v, u)
        peb[tail] -= 1
        self.out[tail].append(head)
        return True

    def _remove_copy(self, u: int, v: int) -> None:
        if v in self.out[u]:
            self.out[u].remove(v)
            self.pebbles[u] += 1
        else:
            self.out[v].remove(u)
            self.pebbles[v] += 1

    def try_add(self, u: int, v: int) -> bool:
        """Add edge ``uv`` if the bound still holds afterwards; report whether it was added."""
        done = 0
        while done < self.copies:
            if not self._insert_copy(u, v):
                for _ in range(done):
                    self._remove_copy(u, v)
                return False
            done += 1
        return True
