"""Partial edge colorings, the five coloring classes, and the F/A/SF/SA sets.

Every class requires each colour class to be a matching; on top of that

* ``STRONG``: each class is an induced matching,
* ``SEMISTRONG``: each class is a semistrong matching,
* ``UNIQUELY_RESTRICTED``: each class is a uniquely restricted matching,
* ``ACYCLIC``: no cycle uses only two colours.

Functions that only need adjacency accept either a :class:`Graph` or a
mapping ``vertex -> iterable of neighbours`` (the reducer passes its
mutable work graphs).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .graph import Edge, Graph, GraphError, edge
from .matching import AdjView, alternating_cycle, alternating_path, pendant_in_span


class ColoringClass(enum.Enum):
    PROPER = "proper"
    ACYCLIC = "acyclic"
    UNIQUELY_RESTRICTED = "ur"
    SEMISTRONG = "ss"
    STRONG = "strong"

    @classmethod
    def parse(cls, name: "str | ColoringClass") -> "ColoringClass":
        if isinstance(name, ColoringClass):
            return name
        key = str(name).strip().lower()
        aliases = {"semistrong": "ss", "uniquely-restricted": "ur", "uniquely_restricted": "ur"}
        key = aliases.get(key, key)
        for c in cls:
            if c.value == key or c.name.lower() == key:
                return c
        raise ValueError(f"unknown coloring class {name!r}; expected one of proper, acyclic, ur, ss, strong")


class PartialColoring:
    """A map from edges to colours ``1..palette``, kept proper.

    Each colour class is stored as a vertex-to-mate dict, so assigning a
    colour that would put two same-coloured edges at a vertex raises.
    """

    __slots__ = ("palette", "_col", "_mate")

    def __init__(self, palette: int, assignment: Mapping[Sequence[int], int] | Iterable = ()):
        if palette < 0:
            raise ValueError("palette must be non-negative")
        self.palette = palette
        self._col: dict[Edge, int] = {}
        self._mate: dict[int, dict[int, int]] = {}
        items = assignment.items() if isinstance(assignment, Mapping) else assignment
        for e, c in items:
            self.assign(e, c)

    def __len__(self) -> int:
        return len(self._col)

    def __contains__(self, e) -> bool:
        return edge(*e) in self._col

    def __getitem__(self, e) -> int:
        return self._col[edge(*e)]

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._col)

    def __eq__(self, other) -> bool:
        return isinstance(other, PartialColoring) and self._col == other._col

    def __repr__(self) -> str:
        return f"PartialColoring(palette={self.palette}, colored={len(self._col)})"

    @classmethod
    def unchecked(cls, palette: int, items: Iterable) -> "PartialColoring":
        """Build without enforcing properness or the palette (for verifying foreign input)."""
        out = cls(palette)
        for e, c in items:
            e = edge(*e)
            out._col[e] = c
            m = out._mate.setdefault(c, {})
            m.setdefault(e[0], e[1])
            m.setdefault(e[1], e[0])
        return out

    def get(self, e, default=None):
        return self._col.get(edge(*e), default)

    def items(self):
        return self._col.items()

    def as_dict(self) -> dict[Edge, int]:
        return dict(self._col)

    def copy(self) -> "PartialColoring":
        out = PartialColoring(self.palette)
        out._col = dict(self._col)
        out._mate = {c: dict(m) for c, m in self._mate.items()}
        return out

    def mates(self, c: int) -> dict[int, int]:
        """Vertex-to-partner dict of colour class ``c`` (do not mutate)."""
        return self._mate.get(c, _EMPTY)

    def color_at(self, v: int, c: int) -> int | None:
        """The neighbour joined to ``v`` by a ``c``-edge, if any."""
        return self._mate.get(c, _EMPTY).get(v)

    def used_colors(self) -> set[int]:
        return set(self._col.values())

    def num_colors(self) -> int:
        return len(set(self._col.values()))

    def class_edges(self, c: int) -> list[Edge]:
        return sorted(e for e, x in self._col.items() if x == c)

    def assign(self, e, c: int) -> None:
        e = edge(*e)
        if not (1 <= c <= self.palette):
            raise ValueError(f"colour {c} outside palette 1..{self.palette}")
        if e in self._col:
            self.unassign(e)
        m = self._mate.setdefault(c, {})
        u, v = e
        if u in m or v in m:
            raise ValueError(f"colour {c} already used at an endpoint of {e}")
        m[u] = v
        m[v] = u
        self._col[e] = c

    def unassign(self, e) -> int | None:
        e = edge(*e)
        c = self._col.pop(e, None)
        if c is not None:
            m = self._mate[c]
            del m[e[0]]
            del m[e[1]]
        return c

    def relabel(self, perm: Mapping[int, int], palette: int | None = None) -> "PartialColoring":
        """Apply a colour permutation/injection."""
        return PartialColoring(self.palette if palette is None else palette,
                               {e: perm[c] for e, c in self._col.items()})


_EMPTY: dict[int, int] = {}


def _adj(g):
    return AdjView(g) if isinstance(g, Graph) else g


@dataclass(frozen=True)
class Violation:
    kind: str
    color: int | None
    edges: tuple[Edge, ...]
    detail: str = ""

    def __str__(self) -> str:
        es = ", ".join(f"{u}-{v}" for u, v in self.edges)
        col = "" if self.color is None else f" colour {self.color}"
        return f"{self.kind}{col}: {es}" + (f" ({self.detail})" if self.detail else "")


# --- full verification --------------------------------------------------------

def verify(g: Graph, phi: PartialColoring, cls) -> Violation | None:
    """First violation of ``cls`` by ``phi`` on ``g``, or None if valid.

    Works directly from the definitions, one colour class at a time, and is
    the reference that the incremental checks are tested against.
    """
    cls = ColoringClass.parse(cls)
    idx = g.edge_index
    classes: dict[int, list[Edge]] = {}
    for e, c in phi.items():
        if e not in idx:
            raise GraphError(f"coloured pair {e[0]}-{e[1]} is not an edge of the graph")
        if not (1 <= c <= phi.palette):
            raise GraphError(f"colour {c} on {e[0]}-{e[1]} is outside the palette 1..{phi.palette}")
        classes.setdefault(c, []).append(e)
    adj = AdjView(g)
    for c in sorted(classes):
        es = sorted(classes[c])
        mate: dict[int, int] = {}
        for u, v in es:
            for x in (u, v):
                if x in mate:
                    return Violation("not-a-matching", c, (edge(x, mate[x]), (u, v)))
            mate[u] = v
            mate[v] = u
        if cls is ColoringClass.STRONG:
            for u, v in es:
                for x in (u, v):
                    for y in adj[x]:
                        if y in mate and mate[x] != y:
                            return Violation("not-induced", c, ((u, v), edge(y, mate[y])),
                                             f"{x}-{y} joins two {c}-edges")
        elif cls is ColoringClass.SEMISTRONG:
            for u, v in es:
                if not (pendant_in_span(adj, mate, u, v) or pendant_in_span(adj, mate, v, u)):
                    return Violation("not-semistrong", c, ((u, v),),
                                     "both endpoints have further neighbours in the class span")
        elif cls is ColoringClass.UNIQUELY_RESTRICTED:
            cyc = alternating_cycle(adj, mate)
            if cyc is not None:
                ring = tuple(edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
                return Violation("alternating-cycle", c, ring)
    if cls is ColoringClass.ACYCLIC:
        return _bichromatic_cycle(phi, sorted(classes))
    return None


def _bichromatic_cycle(phi: PartialColoring, colors: list[int]) -> Violation | None:
    for i, c in enumerate(colors):
        mc = phi.mates(c)
        for d in colors[i + 1 :]:
            md = phi.mates(d)
            seen: set[int] = set()
            for start in mc:
                if start in seen or start not in md:
                    continue
                # walk alternately along c and d; a cycle returns to start
                ring, x, use_c = [], start, True
                while True:
                    seen.add(x)
                    m = mc if use_c else md
                    y = m.get(x)
                    if y is None:
                        break
                    ring.append(edge(x, y))
                    x, use_c = y, not use_c
                    if x == start:
                        return Violation("bichromatic-cycle", None, tuple(ring), f"colours {c} and {d}")
                    if x in seen:
                        break
    return None


def is_valid(g: Graph, phi: PartialColoring, cls) -> bool:
    return verify(g, phi, cls) is None


# --- incremental checks -------------------------------------------------------

def accepts(g, phi: PartialColoring, e, c: int, cls) -> bool:
    """Would giving the uncoloured edge ``e`` colour ``c`` keep class ``c`` valid?

    Assumes the classes touched by the check were valid before.  For
    ``ACYCLIC`` the bichromatic cycles through ``e`` are also examined.
    """
    adj = _adj(g)
    u, v = edge(*e)
    mate = phi.mates(c)
    if u in mate or v in mate:
        return False
    if cls is ColoringClass.PROPER:
        return True
    if cls is ColoringClass.STRONG:
        for x in (u, v):
            for y in adj[x]:
                if y in mate:
                    return False
        return True
    if cls is ColoringClass.SEMISTRONG:
        return _semistrong_accepts(adj, mate, u, v)
    if cls is ColoringClass.UNIQUELY_RESTRICTED:
        ext = _Extended(mate, u, v)
        return alternating_path(adj, ext, v, u) is None
    if cls is ColoringClass.ACYCLIC:
        for d, md in phi._mate.items():
            if d == c or u not in md:
                continue
            # path u -d- . -c- . -d- ... ending at v closes a two-coloured cycle
            x = u
            while True:
                y = md.get(x)
                if y is None:
                    break
                if y == v:
                    return False
                x = mate.get(y)
                if x is None:
                    break
        return True
    raise ValueError(cls)


def _semistrong_accepts(adj, mate: Mapping[int, int], u: int, v: int) -> bool:
    pu = all(y == v or y not in mate for y in adj[u])
    pv = all(y == u or y not in mate for y in adj[v])
    if not (pu or pv):
        return False
    ext = _Extended(mate, u, v)
    # class edges with an endpoint next to u or v may lose their pendant end
    checked: set[int] = set()
    for x in (u, v):
        for y in adj[x]:
            if y in mate and y not in checked:
                z = mate[y]
                checked.add(y)
                checked.add(z)
                if not (pendant_in_span(adj, ext, y, z) or pendant_in_span(adj, ext, z, y)):
                    return False
    return True


class _Extended(Mapping):
    """Read-only view of a mate dict with one extra pair."""

    __slots__ = ("base", "u", "v")

    def __init__(self, base: Mapping[int, int], u: int, v: int):
        self.base, self.u, self.v = base, u, v

    def __getitem__(self, x):
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        return self.base[x]

    def get(self, x, default=None):
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        return self.base.get(x, default)

    def __contains__(self, x):
        return x == self.u or x == self.v or x in self.base

    def __iter__(self):
        yield self.u
        yield self.v
        yield from self.base

    def __len__(self):
        return len(self.base) + 2


def _uncolored(phi: PartialColoring, e: Edge) -> Edge:
    e = edge(*e)
    if e in phi:
        raise GraphError(f"edge {e[0]}-{e[1]} is already coloured")
    return e


def forbidden_set(g, phi: PartialColoring, e, cls) -> set[int]:
    """Colours ``c`` such that colouring ``e`` with ``c`` breaks ``cls`` (``e`` treated as uncoloured)."""
    cls = ColoringClass.parse(cls)
    e = _uncolored(phi, e)
    return {c for c in range(1, phi.palette + 1) if not accepts(g, phi, e, c, cls)}


def available_set(g, phi: PartialColoring, e, cls) -> set[int]:
    cls = ColoringClass.parse(cls)
    e = _uncolored(phi, e)
    return {c for c in range(1, phi.palette + 1) if accepts(g, phi, e, c, cls)}


def strongly_forbidden_set(g, phi: PartialColoring, e) -> set[int]:
    """Colours on edges incident to a vertex of ``N(u) | N(v)``, excluding ``e`` itself."""
    adj = _adj(g)
    u, v = _uncolored(phi, e)
    out: set[int] = set()
    col = phi._col
    for x in set(adj[u]) | set(adj[v]):
        for y in adj[x]:
            f = (x, y) if x < y else (y, x)
            if f != (u, v):
                c = col.get(f)
                if c is not None:
                    out.add(c)
    return out


def strongly_available_set(g, phi: PartialColoring, e) -> set[int]:
    return set(range(1, phi.palette + 1)) - strongly_forbidden_set(g, phi, e)


# --- coloring files -----------------------------------------------------------

def format_coloring(phi: PartialColoring) -> str:
    lines = [f"k {phi.palette}"]
    lines += [f"c {u} {v} {c}" for (u, v), c in sorted(phi.items())]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> PartialColoring:
    palette = None
    items = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "k" and len(parts) == 2 and palette is None:
                palette = int(parts[1])
            elif parts[0] == "c" and len(parts) == 4 and palette is not None:
                items.append(((int(parts[1]), int(parts[2])), int(parts[3])))
            else:
                raise GraphError(f"line {lineno}: cannot parse {raw.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: non-integer field in {raw.strip()!r}") from None
    if palette is None:
        raise GraphError("missing 'k <palette>' header")
    seen = set()
    for e, _ in items:
        if edge(*e) in seen:
            raise GraphError(f"edge {e[0]}-{e[1]} coloured twice")
        seen.add(edge(*e))
    return PartialColoring.unchecked(palette, items)


def read_coloring(path) -> PartialColoring:
    with open(path, encoding="utf-8") as fh:
        return parse_coloring(fh.read())


def write_coloring(phi: PartialColoring, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_coloring(phi))
