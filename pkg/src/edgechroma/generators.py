"""Deterministic graph families and seeded sparse corpora."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .density import SparseBuilder, mad_below
from .graph import Graph, GraphError, edge

EIGHT_THIRDS = Fraction(8, 3)
FOURTEEN_FIFTHS = Fraction(14, 5)


def case_bound(case) -> Fraction:
    """The mad threshold named by a case label ('8/3', '14/5' or the Fraction)."""
    b = Fraction(case) if not isinstance(case, Fraction) else case
    if b not in (EIGHT_THIRDS, FOURTEEN_FIFTHS):
        raise GraphError(f"case must be 8/3 or 14/5, got {case}")
    return b


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphError(msg)


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    """``K_{1,n}`` with centre 0."""
    _need(n >= 1, "star needs n >= 1 leaves")
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


def complete(n: int) -> Graph:
    _need(n >= 1, "complete graph needs n >= 1")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    _need(a >= 1 and b >= 1, "complete bipartite graph needs both sides nonempty")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def prism(n: int) -> Graph:
    """``C_n x K_2``: outer cycle ``0..n-1``, inner cycle ``n..2n-1``."""
    _need(n >= 3, "prism needs n >= 3")
    es = [(i, (i + 1) % n) for i in range(n)]
    es += [(n + i, n + (i + 1) % n) for i in range(n)]
    es += [(i, n + i) for i in range(n)]
    return Graph(2 * n, es)


def cycle_join_I2(d: int) -> Graph:
    """Join of ``C_d`` with two independent vertices ``d`` and ``d+1``."""
    _need(d >= 3, "cycle_join_I2 needs d >= 3")
    es = [(i, (i + 1) % d) for i in range(d)]
    es += [(i, d) for i in range(d)] + [(i, d + 1) for i in range(d)]
    return Graph(d + 2, es)


def cube() -> Graph:
    return Graph(8, [(u, v) for u in range(8) for v in range(u + 1, 8) if bin(u ^ v).count("1") == 1])


def dodecahedron() -> Graph:
    import networkx as nx

    return Graph.from_networkx(nx.dodecahedral_graph())


def petersen() -> Graph:
    import networkx as nx

    return Graph.from_networkx(nx.petersen_graph())


def subdivide(base: Graph, e, t: int) -> Graph:
    """Replace edge ``e`` by a path through ``t`` new vertices."""
    e = edge(*e)
    _need(t >= 0, "subdivision count must be >= 0")
    _need(e in base.edge_index, f"{e} is not an edge")
    es = [f for f in base.edges if f != e]
    chain = [e[0]] + list(range(base.n, base.n + t)) + [e[1]]
    es += list(zip(chain, chain[1:]))
    return Graph(base.n + t, es)


def subdivide_all(base: Graph, t: int) -> Graph:
    """Subdivide every edge ``t`` times."""
    _need(t >= 0, "subdivision count must be >= 0")
    es = []
    nxt = base.n
    for u, v in base.edges:
        chain = [u] + list(range(nxt, nxt + t)) + [v]
        nxt += t
        es += list(zip(chain, chain[1:]))
    return Graph(nxt, es)


def attach_pendants(base: Graph, v: int, t: int) -> Graph:
    _need(0 <= v < base.n, f"vertex {v} out of range")
    _need(t >= 0, "pendant count must be >= 0")
    return base.add_edges([(v, base.n + i) for i in range(t)], extra_vertices=t)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    return Graph(a.n + b.n, list(a.edges) + [(u + a.n, v + a.n) for u, v in b.edges])


def rng_for(*key: int) -> np.random.Generator:
    """Independent PCG64 stream for an integer key (seed, case, ...)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(list(key))))


def sparse_test(case, delta: int, seed: int, max_vertices: int = 60) -> Graph:
    """Seeded connected graph with maximum degree ``delta`` and mad below the case bound.

    A random tree is densified by random edges, each kept only if the bound
    still holds (pebble-game test), and then pendant vertices are hung until
    some vertex reaches degree ``delta``.  The result is re-checked with the
    flow-based density test before it is returned.
    """
    bound = case_bound(case)
    _need(delta >= 2, "delta must be >= 2")
    _need(max_vertices >= delta + 1, "max_vertices must exceed delta")
    rng = rng_for(seed, bound.numerator, bound.denominator, delta)
    n_base = int(rng.integers(2, max(3, max_vertices - delta) + 1))
    n_base = min(n_base, max_vertices - 1)
    deg = [0] * n_base
    es: list[tuple[int, int]] = []
    sb = SparseBuilder(n_base, bound)
    for i in range(1, n_base):
        # the newest vertex is a leaf, so a non-full candidate always exists
        cand = [j for j in range(i) if deg[j] < delta]
        j = cand[int(rng.integers(len(cand)))]
        sb.try_add(i, j)
        es.append((j, i))
        deg[i] += 1
        deg[j] += 1
    present = set(es)
    # densify; the attempt count spreads graphs from tree-like to saturated
    attempts = int(rng.integers(0, 4 * n_base + 1))
    for _ in range(attempts):
        u, v = (int(x) for x in rng.integers(n_base, size=2))
        if u == v or deg[u] >= delta or deg[v] >= delta or edge(u, v) in present:
            continue
        if sb.try_add(u, v):
            present.add(edge(u, v))
            es.append(edge(u, v))
            deg[u] += 1
            deg[v] += 1
    n = n_base
    # hang pendants: first make one vertex reach delta, then sprinkle more
    hub = max(range(n_base), key=lambda x: (deg[x], -x))
    while deg[hub] < delta and n < max_vertices:
        es.append((hub, n))
        deg[hub] += 1
        deg.append(1)
        n += 1
    extra = int(rng.integers(0, max_vertices - n + 1))
    for _ in range(extra):
        v = int(rng.integers(n_base))
        if deg[v] < delta:
            es.append((v, n))
            deg[v] += 1
            deg.append(1)
            n += 1
    g = Graph(n, es)
    if g.max_degree() != delta:
        raise GraphError(f"could not reach maximum degree {delta} within {max_vertices} vertices")
    check = mad_below(g, bound)
    assert check.holds, "sparse_test produced a graph above its density bound"
    return g


def enumerate_small(max_vertices: int) -> list[Graph]:
    """All connected simple graphs on ``1..max_vertices`` vertices, one per isomorphism class.

    Graphs on ``n`` vertices are obtained from those on ``n - 1`` by adding a
    vertex joined to a nonempty subset (every connected graph has a vertex
    whose removal keeps it connected), then deduplicated by an invariant
    hash followed by an isomorphism test inside each bucket.
    """
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher

    _need(1 <= max_vertices <= 8, "enumerate_small supports 1..8 vertices")
    out: list[Graph] = [Graph(1)]
    layer = [Graph(1)]
    for n in range(2, max_vertices + 1):
        buckets: dict[tuple, list] = {}
        nxt: list[Graph] = []
        for base in layer:
            for mask in range(1, 1 << (n - 1)):
                es = list(base.edges) + [(i, n - 1) for i in range(n - 1) if mask >> i & 1]
                h = nx.Graph()
                h.add_nodes_from(range(n))
                h.add_edges_from(es)
                key = (len(es), tuple(sorted(d for _, d in h.degree())),
                       nx.weisfeiler_lehman_graph_hash(h, iterations=3))
                bucket = buckets.setdefault(key, [])
                if any(GraphMatcher(h, other).is_isomorphic() for other in bucket):
                    continue
                bucket.append(h)
                nxt.append(Graph(n, es))
        layer = nxt
        out += nxt
    return out


# --- named family registry ---------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple[int, ...] = ()
    seed: int | None = None


_FAMILIES: dict[str, tuple[int, Callable[..., Graph]]] = {
    "cycle": (1, cycle),
    "path": (1, path),
    "star": (1, star),
    "complete": (1, complete),
    "complete_bipartite": (2, complete_bipartite),
    "prism": (1, prism),
    "cycle_join_I2": (1, cycle_join_I2),
    "cube": (0, cube),
    "dodecahedron": (0, dodecahedron),
    "petersen": (0, petersen),
}


def family_names() -> list[str]:
    return sorted(_FAMILIES) + ["sparse_test", "subdivide", "subdivide_all", "attach_pendants"]


def gen(spec: FamilySpec) -> Graph:
    """Build a family member; ``subdivide``/``attach_pendants`` take a base family as their first parameters.

    Parameter layouts:

    * ``sparse_test``: ``(case_numerator, case_denominator, delta)`` with ``seed``
    * ``subdivide_all``: ``(t, *base)`` with the base family named after the colon,
      e.g. ``FamilySpec("subdivide_all:cube", (1,))``
    * ``subdivide``: ``FamilySpec("subdivide:complete", (u, v, t, 4))``
    * ``attach_pendants``: ``FamilySpec("attach_pendants:cycle", (v, t, 5))``
    """
    name, _, base_name = spec.name.partition(":")
    p = tuple(int(x) for x in spec.params)
    if name == "sparse_test":
        _need(len(p) == 3, "sparse_test takes (case_num, case_den, delta)")
        _need(spec.seed is not None, "sparse_test requires a seed")
        return sparse_test(Fraction(p[0], p[1]), p[2], spec.seed)
    if name in ("subdivide", "subdivide_all", "attach_pendants"):
        _need(bool(base_name), f"{name} needs a base family, e.g. '{name}:cube'")
        head = {"subdivide": 3, "subdivide_all": 1, "attach_pendants": 2}[name]
        _need(len(p) >= head, f"{name} needs {head} leading parameters")
        base = gen(FamilySpec(base_name, p[head:]))
        if name == "subdivide":
            return subdivide(base, (p[0], p[1]), p[2])
        if name == "subdivide_all":
            return subdivide_all(base, p[0])
        return attach_pendants(base, p[0], p[1])
    if name not in _FAMILIES:
        raise GraphError(f"unknown family {name!r}; known: {', '.join(family_names())}")
    arity, fn = _FAMILIES[name]
    _need(len(p) == arity, f"{name} takes {arity} integer parameter(s), got {len(p)}")
    return fn(*p)
