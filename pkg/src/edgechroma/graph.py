"""Immutable simple graphs with a canonical edge order, plus text I/O.

Vertices are ``0..n-1``.  Edges are stored as ``(u, v)`` with ``u < v``
and sorted lexicographically, which makes the edge list a canonical
serialization for a fixed labelling.
"""
from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Malformed graph input (self-loop, multi-edge, bad vertex, bad file)."""


def edge(u: int, v: int) -> Edge:
    """Return the canonical form of the edge ``uv``."""
    return (u, v) if u < v else (v, u)


class Graph:
    __slots__ = ("n", "edges", "_adj", "_masks", "_index")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(n, int) or n < 0:
            raise GraphError(f"vertex count must be a non-negative int, got {n!r}")
        seen: set[Edge] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for raw in edges:
            if len(raw) != 2:
                raise GraphError(f"edge must have two endpoints: {raw!r}")
            u, v = int(raw[0]), int(raw[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = edge(u, v)
            if e in seen:
                raise GraphError(f"multi-edge {e[0]}-{e[1]}")
            seen.add(e)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._masks: tuple[int, ...] | None = None
        self._index: dict[Edge, int] | None = None

    # basic queries
    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edge_index

    @property
    def edge_index(self) -> dict[Edge, int]:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.edges)}
        return self._index

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as an int bitmask."""
        if self._masks is None:
            out = []
            for a in self._adj:
                b = 0
                for x in a:
                    b |= 1 << x
                out.append(b)
            self._masks = tuple(out)
        return self._masks

    def incident(self, v: int) -> Iterator[Edge]:
        for u in self._adj[v]:
            yield edge(u, v)

    def adjacency(self) -> dict[int, set[int]]:
        """Mutable copy of the adjacency structure."""
        return {v: set(a) for v, a in enumerate(self._adj)}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # derived graphs
    def subgraph(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``, relabelled; returns it with the new-to-old map."""
        back = sorted(set(keep))
        fwd = {v: i for i, v in enumerate(back)}
        es = [(fwd[u], fwd[v]) for u, v in self.edges if u in fwd and v in fwd]
        return Graph(len(back), es), back

    def delete_vertices(self, xs: Iterable[int]) -> tuple["Graph", list[int]]:
        gone = set(xs)
        if any(not (0 <= x < self.n) for x in gone):
            raise GraphError("vertex out of range")
        return self.subgraph(v for v in range(self.n) if v not in gone)

    def delete_edges(self, es: Iterable[Sequence[int]]) -> "Graph":
        gone = {edge(*e) for e in es}
        missing = gone - set(self.edge_index)
        if missing:
            raise GraphError(f"not an edge: {min(missing)}")
        return Graph(self.n, [e for e in self.edges if e not in gone])

    def add_edges(self, es: Iterable[Sequence[int]], extra_vertices: int = 0) -> "Graph":
        return Graph(self.n + extra_vertices, list(self.edges) + [tuple(e) for e in es])

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self._adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def to_networkx(self):
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges)
        return h

    @classmethod
    def from_networkx(cls, h) -> "Graph":
        nodes = sorted(h.nodes())
        fwd = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), [(fwd[u], fwd[v]) for u, v in h.edges()])


def degree(g: Graph, v: int) -> int:
    if not (0 <= v < g.n):
        raise GraphError(f"vertex {v} out of range 0..{g.n - 1}")
    return g.degree(v)


def max_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("maximum degree of the empty graph is undefined")
    return g.max_degree()


def edge_distance(g: Graph, e: Sequence[int], f: Sequence[int]) -> float:
    """Distance between edges in the line graph (0 for equal, 1 for adjacent).

    Returns ``math.inf`` when the edges lie in different components.
    """
    e, f = edge(*e), edge(*f)
    idx = g.edge_index
    if e not in idx or f not in idx:
        raise GraphError("both arguments must be edges of the graph")
    if e == f:
        return 0
    # distance from the endpoints of e to the nearest endpoint of f
    dist = {e[0]: 0, e[1]: 0}
    q = deque(e)
    while q:
        x = q.popleft()
        if x in f:
            return dist[x] + 1
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return math.inf


def girth(g: Graph) -> float:
    """Length of a shortest cycle, or ``math.inf`` for a forest."""
    best = math.inf
    adj = [g.neighbors(v) for v in range(g.n)]
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


# --- text formats -----------------------------------------------------------

def format_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    n = m = None
    es = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 3:
                if n is not None:
                    raise GraphError(f"line {lineno}: duplicate header")
                n, m = int(parts[1]), int(parts[2])
            elif parts[0] == "e" and len(parts) == 3:
                if n is None:
                    raise GraphError(f"line {lineno}: edge before header")
                es.append((int(parts[1]), int(parts[2])))
            else:
                raise GraphError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: non-integer field in {raw.strip()!r}") from None
    if n is None:
        raise GraphError("missing 'p <n> <m>' header")
    if len(es) != m:
        raise GraphError(f"header announces {m} edges but {len(es)} were given")
    return Graph(n, es)


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))


def format_dot(g: Graph, colors: dict[Edge, int] | None = None) -> str:
    lines = ["graph G {"]
    lines += [f"  {v};" for v in range(g.n)]
    for u, v in g.edges:
        c = None if colors is None else colors.get((u, v))
        lines.append(f"  {u} -- {v};" if c is None else f'  {u} -- {v} [label="{c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot(text: str) -> Graph:
    """Read back the DOT subset written by :func:`format_dot` (labels ignored)."""
    body = text.strip()
    if not body.startswith("graph") or not body.endswith("}"):
        raise GraphError("expected an undirected 'graph { ... }' block")
    body = body[body.index("{") + 1 : -1]
    verts: set[int] = set()
    es = []
    for stmt in body.split(";"):
        stmt = stmt.split("[", 1)[0].strip()
        if not stmt:
            continue
        try:
            if "--" in stmt:
                a, b = stmt.split("--")
                u, v = int(a), int(b)
                es.append((u, v))
                verts.update((u, v))
            else:
                verts.add(int(stmt))
        except ValueError:
            raise GraphError(f"cannot parse DOT statement {stmt!r}") from None
    n = max(verts) + 1 if verts else 0
    return Graph(n, es)
