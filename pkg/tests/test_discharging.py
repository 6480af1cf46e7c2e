from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from edgechroma.discharging import (
    Case,
    deficiency_report,
    discharge,
    discharge_14_5,
    discharge_8_3,
    format_deficiencies,
    format_ledger,
    rule_totals,
)
from edgechroma.generators import complete
from edgechroma.graph import Graph
from edgechroma.structure import core_view

from .conftest import small_graphs


def k4_subdivided():
    return Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 4)])


def test_eight_thirds_ledger_by_hand():
    led = discharge_8_3(k4_subdivided())
    third = F(1, 3)
    assert led.final == {0: F(3), 1: F(3), 2: 3 - third, 3: 3 - third, 4: 2 + 2 * third}
    assert deficiency_report(led) == []


def test_fourteen_fifths_ledger_by_hand():
    # 2 and 3 are bad with no bad neighbour: each good vertex sends them 1/10
    led = discharge_14_5(k4_subdivided())
    assert led.final == {v: F(14, 5) for v in range(5)}
    assert rule_totals(led) == {"R1": F(4, 5), "R2-2": F(2, 5)}
    assert deficiency_report(led) == []


@settings(max_examples=150, deadline=None)
@given(small_graphs(max_n=10))
def test_charge_is_conserved(g):
    core = core_view(g).core
    for case in Case:
        led = discharge(core, case)
        assert sum(led.final.values()) == sum(led.initial.values()) == 2 * core.m


def test_dense_graph_has_no_deficiency():
    assert deficiency_report(discharge(complete(4), "8/3")) == []


def test_case_parsing():
    assert Case.parse("8/3") is Case.EIGHT_THIRDS
    assert Case.parse(F(14, 5)).label == "14/5"
    with pytest.raises(ValueError):
        Case.parse("3")


def test_ledger_formats_are_exact_rationals():
    led = discharge_8_3(k4_subdivided())
    text = format_ledger(led, names=[10, 11, 12, 13, 14])
    assert "12\t3/1\t8/3" in text.splitlines()
    assert "." not in text
    assert format_deficiencies([]) == "vertex\tfinal\tshortfall\n"
