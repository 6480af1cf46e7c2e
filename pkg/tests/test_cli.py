from fractions import Fraction

import pytest

from edgechroma.cli import main
from edgechroma.coloring import PartialColoring, format_coloring, read_coloring, verify
from edgechroma.density import mad_bruteforce
from edgechroma.exact import brute_force_index
from edgechroma.generators import complete, cycle, path, petersen, sparse_test, subdivide_all, cube
from edgechroma.graph import read_edge_list


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_writes_a_parseable_edge_list(tmp_path, capsys):
    p = tmp_path / "c.txt"
    code, _, _ = run(capsys, "gen", "cycle", 6, "-o", p)
    assert code == 0
    g = read_edge_list(p)
    assert (g.n, g.m) == (6, 6)


def test_gen_sparse_test_accepts_fraction_parameter(tmp_path, capsys):
    p = tmp_path / "s.txt"
    assert run(capsys, "gen", "sparse_test", "8/3", 5, "--seed", 4, "-o", p)[0] == 0
    assert read_edge_list(p).edges == sparse_test("8/3", 5, 4).edges


def test_mad_prints_exact_fraction(tmp_graph, capsys):
    g = subdivide_all(complete(4), 1)
    code, out, _ = run(capsys, "mad", tmp_graph(g))
    assert code == 0
    assert out.splitlines()[0] == "12/5"
    assert Fraction(out.splitlines()[0]) == mad_bruteforce(g)


def test_mad_below_fails_with_witness(tmp_graph, capsys):
    code, out, _ = run(capsys, "mad", tmp_graph(complete(4)), "--below", "8/3")
    assert code == 1
    assert out.splitlines() == ["fails", "witness 0 1 2 3"]
    assert run(capsys, "mad", tmp_graph(cycle(5)), "--below", "8/3")[:2] == (0, "holds\n")


@pytest.mark.parametrize("g,expect", [(cycle(7), "7"), (path(4), "inf"), (petersen(), "5")])
def test_girth(tmp_graph, capsys, g, expect):
    assert run(capsys, "girth", tmp_graph(g))[:2] == (0, expect + "\n")


def test_classify_drops_leaves(tmp_graph, capsys):
    code, out, _ = run(capsys, "classify", tmp_graph(path(3)))
    assert code == 0
    rows = out.splitlines()
    assert rows[0].startswith("vertex\tdeg\tclass")
    assert [r.split("\t")[0] for r in rows[1:]] == ["1"]


def test_discharge_without_deficiency(tmp_graph, capsys):
    code, out, _ = run(capsys, "discharge", "--case", "8/3", tmp_graph(complete(4)))
    assert code == 0
    head, tail = out.split("# deficiencies\n")
    assert tail == "vertex\tfinal\tshortfall\n"
    assert {line.split("\t")[2] for line in head.splitlines()[1:]} == {"3/1"}


def test_discharge_subdivided_cube(tmp_graph, capsys):
    code, out, _ = run(capsys, "discharge", "--case", "8/3", tmp_graph(subdivide_all(cube(), 1)))
    assert code == 1
    head, tail = out.split("# deficiencies\n")
    final = {int(r.split("\t")[0]): r.split("\t")[2] for r in head.splitlines()[1:]}
    # each cube vertex pays 1/3 down three 1-threads; each subdivision vertex collects 2/3
    assert {final[v] for v in range(8)} == {"2/1"}
    assert {final[v] for v in range(8, 20)} == {"8/3"}
    assert [r.split("\t")[2] for r in tail.splitlines()[1:]] == ["2/3"] * 8


def test_discharge_reports_shortfall(tmp_graph, capsys):
    code, out, _ = run(capsys, "discharge", "--case", "14/5", tmp_graph(cycle(5)))
    assert code == 1
    tail = out.split("# deficiencies\n")[1].splitlines()
    assert len(tail) == 6 and tail[1] == "0\t2/1\t4/5"


def test_verify_ok_and_violation(tmp_graph, tmp_path, capsys):
    g = path(4)
    good, bad = tmp_path / "good.txt", tmp_path / "bad.txt"
    good.write_text(format_coloring(PartialColoring(2, {(0, 1): 1, (1, 2): 2, (2, 3): 1})))
    bad.write_text("k 2\nc 0 1 1\nc 1 2 1\nc 2 3 2\n")
    gp = tmp_graph(g)
    assert run(capsys, "verify", "--class", "ss", gp, good)[:2] == (0, "ok\n")
    code, out, _ = run(capsys, "verify", "--class", "proper", gp, bad)
    assert code == 1 and out.startswith("violation ")
    # a path of three edges with both ends coloured alike is semistrong but not strong
    assert run(capsys, "verify", "--class", "strong", gp, good)[0] == 1


def test_solve_matches_brute_force(tmp_graph, tmp_path, capsys):
    g = cycle(5)
    w = tmp_path / "w.txt"
    code, out, _ = run(capsys, "solve", "--class", "ss", "--witness", w, tmp_graph(g))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == f"optimum {brute_force_index(g, 'ss')}"
    assert lines[1].startswith("nodes ") and lines[2].startswith("time_ms ")
    assert verify(g, read_coloring(w), "ss") is None


def test_solve_timeout_exits_three(tmp_graph, capsys):
    code, out, _ = run(capsys, "solve", "--class", "ss", "--budget", 20, tmp_graph(petersen()))
    assert code == 3
    lo, hi = map(int, out.splitlines()[0].removeprefix("bounds ").split(".."))
    assert lo < hi


def test_color_with_trace(tmp_graph, tmp_path, capsys):
    g = subdivide_all(complete(5), 2)
    o = tmp_path / "phi.txt"
    assert run(capsys, "color", "--case", "8/3", "--trace", "-o", o, tmp_graph(g))[0] == 0
    text = o.read_text()
    assert any(line.startswith("# ") for line in text.splitlines())
    phi = read_coloring(o)
    assert verify(g, phi, "ss") is None
    assert len({c for _, c in phi.items()}) <= 2 * 4 + 2


def test_color_rejects_dense_graph(tmp_graph, capsys):
    code, out, err = run(capsys, "color", "--case", "14/5", tmp_graph(complete(4)))
    assert code == 1 and out == ""
    assert "witness 0 1 2 3" in err


def test_hierarchy_table(tmp_graph, capsys):
    g = cycle(4)
    code, out, _ = run(capsys, "hierarchy", tmp_graph(g))
    assert code == 0
    rows = [r.split("\t") for r in out.splitlines()[1:]]
    assert [r[0] for r in rows] == ["proper", "acyclic", "ur", "ss", "strong"]
    assert all(r[2] == "exact" for r in rows)
    assert [int(r[1]) for r in rows] == [brute_force_index(g, r[0]) for r in rows]


def test_hierarchy_timeout(tmp_graph, capsys):
    code, out, _ = run(capsys, "hierarchy", "--budget", 5, tmp_graph(petersen()))
    assert code == 3
    assert "bounds" in out


@pytest.mark.parametrize("argv", [
    ["girth", "/no/such/file"],
    ["verify", "--class", "nope", "a", "b"],
    ["discharge", "--case", "3", "a"],
    ["frobnicate"],
])
def test_input_errors_exit_two(capsys, argv):
    assert main(argv) == 2


def test_malformed_edge_list_exits_two(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("p 3 1\ne 0 7\n")
    code, _, err = run(capsys, "mad", p)
    assert code == 2 and err.startswith("error: ")
