import itertools

import pytest
from hypothesis import strategies as st

from edgechroma.graph import Graph


@st.composite
def small_graphs(draw, max_n=8, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, k in zip(pairs, keep) if k])


@pytest.fixture
def tmp_graph(tmp_path):
    from edgechroma.graph import write_edge_list

    def make(g, name="g.txt"):
        p = tmp_path / name
        write_edge_list(g, p)
        return str(p)

    return make


ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line; printed again in the terminal summary."""

    def record(num, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
