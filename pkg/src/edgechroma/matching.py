"""Matching predicates: induced, semistrong and uniquely restricted.

For a matching ``M`` write ``G_M`` for the subgraph induced by the
matched vertices.  ``M`` is

* induced when every vertex has degree 1 in ``G_M``;
* semistrong when every edge of ``M`` has an endpoint of degree 1 in ``G_M``;
* uniquely restricted when ``M`` is the only perfect matching of ``G_M``,
  which holds exactly when no cycle alternates between ``M`` and non-``M`` edges.

The low-level helpers take an adjacency mapping and a ``mate`` dict so the
coloring code can reuse them on colour classes without building graphs.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .graph import Edge, Graph, GraphError, edge


def mate_map(m: Iterable[Sequence[int]]) -> dict[int, int] | None:
    """Vertex-to-partner map, or None if two edges share a vertex."""
    mate: dict[int, int] = {}
    for u, v in m:
        if u in mate or v in mate or u == v:
            return None
        mate[u] = v
        mate[v] = u
    return mate


def _checked_mate(g: Graph, m: Iterable[Sequence[int]]) -> dict[int, int] | None:
    es = [edge(*e) for e in m]
    idx = g.edge_index
    for e in es:
        if e not in idx:
            raise GraphError(f"{e} is not an edge of the graph")
    return mate_map(es)


def is_matching(g: Graph, m: Iterable[Sequence[int]]) -> bool:
    return _checked_mate(g, m) is not None


def induced_submatching_graph(g: Graph, m: Iterable[Sequence[int]]) -> tuple[Graph, list[int]]:
    """``G_M`` together with its new-to-old vertex map."""
    mate = _checked_mate(g, m)
    if mate is None:
        raise GraphError("not a matching")
    return g.subgraph(mate)


def degree_in_span(adj: Mapping[int, Iterable[int]], mate: Mapping[int, int], x: int) -> int:
    return sum(1 for y in adj[x] if y in mate)


def pendant_in_span(adj, mate, a: int, b: int) -> bool:
    """True when ``b`` is the only matched neighbour of ``a``."""
    for y in adj[a]:
        if y != b and y in mate:
            return False
    return True


def alternating_path(adj, mate: Mapping[int, int], start: int, goal: int,
                     avoid: frozenset[int] = frozenset()) -> list[int] | None:
    """Simple path ``start -> ... -> goal`` alternating non-matching, matching edges.

    The path begins and ends with a non-matching edge; every internal vertex is
    matched and entered/left through its matching edge.  Returns the vertex
    sequence or None.  Vertices in ``avoid`` are never used internally.
    """
    # state: current vertex x (already left via matching edge), path so far
    used = set(avoid)
    used.add(start)
    used.add(goal)
    path = [start]
    stack = [iter(adj[start])]
    while stack:
        x = path[-1]
        advanced = False
        for z in stack[-1]:
            if z == goal:
                if mate.get(x) != goal:
                    return path + [goal]
                continue
            if z in used or z not in mate or mate.get(x) == z:
                continue
            w = mate[z]
            if w in used:
                continue
            used.add(z)
            used.add(w)
            path += [z, w]
            stack.append(iter(adj[w]))
            advanced = True
            break
        if not advanced:
            stack.pop()
            if len(path) > 1:
                w = path.pop()
                z = path.pop()
                used.discard(w)
                used.discard(z)
    return None


def alternating_cycle(adj, mate: Mapping[int, int], through: Edge | None = None) -> list[int] | None:
    """An ``M``-alternating cycle (closed vertex list), optionally through one matching edge."""
    if through is not None:
        pairs = [through]
    else:
        pairs = sorted({edge(a, b) for a, b in mate.items()})
    for a, b in pairs:
        # a -M- b, then alternate back to a
        p = alternating_path(adj, mate, b, a)
        if p is not None:
            return [a] + p
    return None


def is_induced_matching(g: Graph, m: Iterable[Sequence[int]]) -> bool:
    mate = _checked_mate(g, m)
    if mate is None:
        return False
    adj = AdjView(g)
    return all(pendant_in_span(adj, mate, x, y) for x, y in mate.items())


def is_semistrong_matching(g: Graph, m: Iterable[Sequence[int]]) -> bool:
    mate = _checked_mate(g, m)
    if mate is None:
        return False
    adj = AdjView(g)
    for a, b in mate.items():
        if a < b and not (pendant_in_span(adj, mate, a, b) or pendant_in_span(adj, mate, b, a)):
            return False
    return True


def is_uniquely_restricted_matching(g: Graph, m: Iterable[Sequence[int]]) -> bool:
    mate = _checked_mate(g, m)
    if mate is None:
        return False
    return alternating_cycle(AdjView(g), mate) is None


class AdjView:
    """Mapping-style view of a Graph's adjacency."""

    __slots__ = ("g",)

    def __init__(self, g: Graph):
        self.g = g

    def __getitem__(self, v: int):
        return self.g.neighbors(v)


def count_perfect_matchings(g: Graph) -> int:
    """Number of perfect matchings by memoised recursion over vertex bitmasks."""
    if g.n > 40:
        raise ValueError("perfect matching counting is limited to 40 vertices")
    masks = g.masks

    @lru_cache(maxsize=None)
    def count(rest: int) -> int:
        if rest == 0:
            return 1
        low = rest & -rest
        i = low.bit_length() - 1
        rest ^= low
        total = 0
        cand = masks[i] & rest
        while cand:
            b = cand & -cand
            cand ^= b
            total += count(rest ^ b)
        return total

    return count((1 << g.n) - 1)


def has_unique_perfect_matching(g: Graph) -> bool:
    return count_perfect_matchings(g) == 1
