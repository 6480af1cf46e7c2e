"""Command-line front end.

Exit codes: 0 success or property holds, 1 property fails, 2 input error,
3 solver budget exhausted.  Numbers on stdout are integers or ``p/q``.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .coloring import ColoringClass, format_coloring, read_coloring, verify
from .graph import Graph, GraphError, format_edge_list, girth, read_edge_list

OK, FAIL, INPUT, TIMEOUT = 0, 1, 2, 3


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _out(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _split_params(raw: list[str]) -> list[int]:
    out = []
    for tok in raw:
        if "/" in tok:
            f = Fraction(tok)
            out += [f.numerator, f.denominator]
        else:
            out.append(int(tok))
    return out


def cmd_gen(a) -> int:
    from .generators import FamilySpec, gen

    g = gen(FamilySpec(a.family, tuple(_split_params(a.params)), a.seed))
    _out(format_edge_list(g), a.output)
    return OK


def cmd_mad(a) -> int:
    from .density import mad, mad_below

    g = read_edge_list(a.graph)
    if a.below is not None:
        chk = mad_below(g, Fraction(a.below))
        print("holds" if chk.holds else "fails")
        if not chk.holds:
            print("witness " + " ".join(map(str, sorted(chk.witness))))
        return OK if chk.holds else FAIL
    r = mad(g)
    print(_q(r.value))
    print("witness " + " ".join(map(str, sorted(r.witness))))
    return OK


def cmd_girth(a) -> int:
    gv = girth(read_edge_list(a.graph))
    print("inf" if gv == float("inf") else int(gv))
    return OK


def _core_adj(g: Graph) -> dict[int, list[int]]:
    leaves = {v for v in range(g.n) if g.degree(v) == 1}
    return {v: [u for u in g.neighbors(v) if u not in leaves] for v in range(g.n) if v not in leaves}


def cmd_classify(a) -> int:
    from .structure import classify_adj, format_classification

    g = read_edge_list(a.graph)
    sys.stdout.write(format_classification(classify_adj(_core_adj(g))))
    return OK


def cmd_discharge(a) -> int:
    from .discharging import discharge, deficiency_report, format_deficiencies, format_ledger
    from .structure import core_view

    g = read_edge_list(a.graph)
    cv = core_view(g)
    led = discharge(cv.core, a.case)
    rep = deficiency_report(led)
    sys.stdout.write(format_ledger(led, cv.back))
    print("# deficiencies")
    sys.stdout.write(format_deficiencies(rep, cv.back))
    return OK if not rep else FAIL


def cmd_verify(a) -> int:
    g = read_edge_list(a.graph)
    phi = read_coloring(a.coloring)
    bad = verify(g, phi, a.cls)
    if bad is None:
        print("ok")
        return OK
    print(f"violation {bad}")
    return FAIL


def cmd_solve(a) -> int:
    from .exact import SolverTimeout, chromatic_index

    g = read_edge_list(a.graph)
    t0 = time.monotonic()
    try:
        r = chromatic_index(g, a.cls, budget=a.budget, jobs=a.jobs)
    except SolverTimeout as exc:
        print(f"bounds {exc.lower}..{exc.upper}")
        print(f"nodes {exc.nodes}")
        print(f"time_ms {round((time.monotonic() - t0) * 1000)}")
        if a.witness and exc.witness is not None:
            _out(format_coloring(exc.witness), a.witness)
        return TIMEOUT
    print(f"optimum {r.optimum}")
    print(f"nodes {r.nodes_explored}")
    print(f"time_ms {round(r.wall_time * 1000)}")
    if a.witness:
        _out(format_coloring(r.witness), a.witness)
    return OK


def cmd_color(a) -> int:
    from .reducer import IrreducibleError, PreconditionError, color, format_trace

    g = read_edge_list(a.graph)
    try:
        res = color(g, a.case)
    except PreconditionError as exc:
        print(f"# precondition fails: mad is not below {_q(exc.bound)}", file=sys.stderr)
        print("# witness " + " ".join(map(str, sorted(exc.witness or ()))), file=sys.stderr)
        return FAIL
    except IrreducibleError as exc:
        print(f"# {exc}", file=sys.stderr)
        return FAIL
    text = format_coloring(res.coloring)
    if a.trace:
        text += "".join(f"# {line}\n" for line in format_trace(res).splitlines())
    _out(text, a.output)
    return OK


def cmd_hierarchy(a) -> int:
    from .exact import CHAIN, SolverTimeout, all_indices, chain_violations

    g = read_edge_list(a.graph)
    if g.m == 0:
        raise GraphError("hierarchy needs at least one edge")
    res = all_indices(g, budget=a.budget)
    exact = {}
    print("class\tvalue\tstatus")
    for cls in CHAIN:
        r = res[cls]
        if isinstance(r, SolverTimeout):
            print(f"{cls.value}\t{r.lower}..{r.upper}\tbounds")
        else:
            exact[cls] = r.optimum
            print(f"{cls.value}\t{r.optimum}\texact")
    bad = chain_violations(exact)
    for x, y in bad:
        print(f"# chain violation {x.value} > {y.value}", file=sys.stderr)
    if bad:
        return FAIL
    return TIMEOUT if len(exact) < len(CHAIN) else OK


def _class_arg(s: str) -> ColoringClass:
    try:
        return ColoringClass.parse(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _case_arg(s: str):
    from .discharging import Case

    try:
        return Case.parse(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edgechroma", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="write a generated graph as an edge list")
    s.add_argument("family", help="family name, e.g. prism, sparse_test, subdivide_all:cube")
    s.add_argument("params", nargs="*", help="integer parameters; p/q expands to p q")
    s.add_argument("--seed", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("mad", help="exact maximum average degree and a densest subgraph")
    s.add_argument("graph")
    s.add_argument("--below", help="only decide mad < BELOW (exit 1 if not)")
    s.set_defaults(fn=cmd_mad)

    s = sub.add_parser("girth", help="length of a shortest cycle, or inf")
    s.add_argument("graph")
    s.set_defaults(fn=cmd_girth)

    s = sub.add_parser("classify", help="vertex classes and thread counts of the core")
    s.add_argument("graph")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("discharge", help="charge ledger and deficiency report of the core")
    s.add_argument("--case", type=_case_arg, required=True)
    s.add_argument("graph")
    s.set_defaults(fn=cmd_discharge)

    s = sub.add_parser("verify", help="check a coloring file against a class")
    s.add_argument("--class", dest="cls", type=_class_arg, required=True)
    s.add_argument("graph")
    s.add_argument("coloring")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("solve", help="exact chromatic index of a class")
    s.add_argument("--class", dest="cls", type=_class_arg, required=True)
    s.add_argument("--budget", type=int, help="search node limit (default: EDGECHROMA_BUDGET or none)")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--witness", help="write the optimal coloring here")
    s.add_argument("graph")
    s.set_defaults(fn=cmd_solve)

    s = sub.add_parser("color", help="semistrong coloring of a sparse graph within 2D+2 or 2D+4 colors")
    s.add_argument("--case", type=_case_arg, required=True)
    s.add_argument("--trace", action="store_true", help="append the reduction log as comments")
    s.add_argument("-o", "--output")
    s.add_argument("graph")
    s.set_defaults(fn=cmd_color)

    s = sub.add_parser("hierarchy", help="all five chromatic indices and the chain check")
    s.add_argument("--budget", type=int)
    s.add_argument("graph")
    s.set_defaults(fn=cmd_hierarchy)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT if exc.code else OK
    try:
        return a.fn(a)
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
