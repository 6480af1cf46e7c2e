"""Exact discharging on a core graph.

Every vertex starts with its core degree as charge.  Two rule sets move
charge around, all amounts are :class:`fractions.Fraction`, and every
transfer is itemised so a deficient vertex can be traced back to rules.

Rules for the 8/3 threshold:

* ``R1-thread``: each 3+-vertex gives 1/3 to each 2-vertex on each incident thread
  (a thread with both ends at ``v`` is served once per end);
* ``R1-bad``: each 3+-vertex gives 1/3 to each neighbour that is bad (3-vertex ending two 1-threads).

Rules for the 14/5 threshold:

* ``R1``: a bad 3-vertex gives 2/5 to each nonpoor 2-neighbour;
* ``R2-1``/``R2-2``: a good 3-vertex gives a bad 3-neighbour ``u`` 1/5 if ``u``
  has a bad 3-neighbour and 1/10 otherwise (per pair);
* ``R3``: a 4+-vertex gives 2/5 to each nonpoor 2-neighbour and 1/5 to each bad 3-neighbour;
* ``R4``: if any poor 2-vertex exists, every vertex of maximum core degree gives
  4/5 to each poor 2-neighbour.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graph import Graph
from .structure import Classification, VertexClass, classify


class Case(enum.Enum):
    EIGHT_THIRDS = Fraction(8, 3)
    FOURTEEN_FIFTHS = Fraction(14, 5)

    @classmethod
    def parse(cls, x) -> "Case":
        if isinstance(x, Case):
            return x
        f = Fraction(x) if not isinstance(x, Fraction) else x
        for c in cls:
            if c.value == f:
                return c
        raise ValueError(f"case must be 8/3 or 14/5, got {x}")

    @property
    def label(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


@dataclass(frozen=True)
class Transfer:
    source: int
    target: int
    amount: Fraction
    rule: str


@dataclass
class ChargeLedger:
    case: Case
    initial: dict[int, Fraction]
    transfers: list[Transfer] = field(default_factory=list)
    final: dict[int, Fraction] = field(default_factory=dict)

    def give(self, a: int, b: int, amount: Fraction, rule: str) -> None:
        self.transfers.append(Transfer(a, b, amount, rule))

    def settle(self) -> "ChargeLedger":
        fin = dict(self.initial)
        for t in self.transfers:
            fin[t.source] -= t.amount
            fin[t.target] += t.amount
        self.final = fin
        return self


def discharge_8_3(core: Graph, cls: Classification | None = None) -> ChargeLedger:
    c = cls or classify(core)
    led = ChargeLedger(Case.EIGHT_THIRDS, {v: Fraction(d) for v, d in c.degree.items()})
    third = Fraction(1, 3)
    for t in c.scan.threads:
        for u in t.ends:
            for x in t.interior:
                led.give(u, x, third, "R1-thread")
    for v, d in c.degree.items():
        if d >= 3:
            for x in core.neighbors(v):
                if x in c.bad_8_3:
                    led.give(v, x, third, "R1-bad")
    return led.settle()


def discharge_14_5(core: Graph, cls: Classification | None = None) -> ChargeLedger:
    c = cls or classify(core)
    led = ChargeLedger(Case.FOURTEEN_FIFTHS, {v: Fraction(d) for v, d in c.degree.items()})
    vc = c.vclass
    two5, one5, one10, four5 = Fraction(2, 5), Fraction(1, 5), Fraction(1, 10), Fraction(4, 5)
    top = c.max_degree
    any_poor = bool(c.poor)
    for v in sorted(c.degree):
        k = vc[v]
        nbrs = core.neighbors(v)
        if k is VertexClass.THREE_BAD:
            for x in nbrs:
                if vc[x] is VertexClass.TWO_NONPOOR:
                    led.give(v, x, two5, "R1")
        elif k is VertexClass.THREE_GOOD:
            for u in nbrs:
                if vc[u] is VertexClass.THREE_BAD:
                    if c.bn_14_5[u] > 0:
                        led.give(v, u, one5, "R2-1")
                    else:
                        led.give(v, u, one10, "R2-2")
        if k is VertexClass.FOUR_PLUS:
            for x in nbrs:
                if vc[x] is VertexClass.TWO_NONPOOR:
                    led.give(v, x, two5, "R3")
                elif vc[x] is VertexClass.THREE_BAD:
                    led.give(v, x, one5, "R3")
        if any_poor and c.degree[v] == top:
            for x in nbrs:
                if vc[x] is VertexClass.TWO_POOR:
                    led.give(v, x, four5, "R4")
    return led.settle()


def discharge(core: Graph, case) -> ChargeLedger:
    case = Case.parse(case)
    return discharge_8_3(core) if case is Case.EIGHT_THIRDS else discharge_14_5(core)


@dataclass(frozen=True)
class Deficiency:
    vertex: int
    final: Fraction
    shortfall: Fraction


def deficiency_report(ledger: ChargeLedger) -> list[Deficiency]:
    """Vertices whose final charge is below the case threshold, largest shortfall first."""
    b = ledger.case.value
    out = [Deficiency(v, f, b - f) for v, f in ledger.final.items() if f < b]
    out.sort(key=lambda d: (-d.shortfall, d.vertex))
    return out


def rule_totals(ledger: ChargeLedger) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    for t in ledger.transfers:
        out[t.rule] = out.get(t.rule, Fraction(0)) + t.amount
    return out


def format_ledger(ledger: ChargeLedger, names: Sequence[int] | None = None) -> str:
    """TSV of charges; ``names`` maps core indices back to vertex labels."""
    lines = ["vertex\tinitial\tfinal"]
    for v in sorted(ledger.initial):
        lines.append(f"{_name(v, names)}\t{_q(ledger.initial[v])}\t{_q(ledger.final[v])}")
    return "\n".join(lines) + "\n"


def format_deficiencies(report: list[Deficiency], names: Sequence[int] | None = None) -> str:
    lines = ["vertex\tfinal\tshortfall"]
    lines += [f"{_name(d.vertex, names)}\t{_q(d.final)}\t{_q(d.shortfall)}" for d in report]
    return "\n".join(lines) + "\n"


def _name(v: int, names: Sequence[int] | None) -> int:
    return v if names is None else names[v]


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"
