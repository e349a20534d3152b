"""Command-line front end.

    graphpoly hstar  --graph FILE [--method all] [--trees FILE] [--base-vertex V] [--order labels|1,2,...]
    graphpoly verify --graph FILE --trees FILE
    graphpoly dissect --graph FILE [--out FILE]
    graphpoly paper {k3,fig2,fig3-negative,fig4-negative}

Graph files that do not exist on disk are looked up among the bundled
examples (``k3.ug``, ``k3.dg``, ``fig2.dg``, ``edge.ug``, ...).

Exit codes: 0 success, 1 disagreement or failed verification, 2 input
error, 3 non-generic reference point.
"""

from __future__ import annotations

import argparse
import hashlib
import random
import sys
import warnings
from pathlib import Path

from . import figures
from .dissect import (DissectingTreeSet, DissectionError, jaeger_dissection, sympoly_dissection,
                      verify_dissection)
from .formats import ParseError, format_record, format_trees, parse_graph, parse_ribbon, parse_trees, ribbon_for
from .geometry import NonGenericPointError, root_vertices
from .graphs import Digraph, GraphError, is_semi_balanced
from .hstar import (HStarPolynomial, InconsistencyError, ehrhart_hstar, hstar_away, hstar_passivity,
                    hstar_visibility, negative_suite, polytope_vertices, q_basepoint, q_order, simplices)
from .ribbon import EdgeOrder, internal_semi_passivity

OK, DISAGREE, INPUT, GENERIC = 0, 1, 2, 3
METHODS = ("away", "passivity", "visibility", "ehrhart")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    p = Path(path)
    if p.exists():
        return p.read_text()
    bundled = figures.data_path(path)
    if bundled.is_file():
        return bundled.read_text()
    raise InputError(f"no such file: {path}")


def graph_hash(g: Digraph) -> str:
    canon = f"{g.n};" + ";".join(f"{e}:{g.vertices.index(a)}>{g.vertices.index(b)}"
                                 for e, (a, b) in g.edges.items())
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _target(g: Digraph) -> str:
    if g.is_bidirected:
        return "symmetric"
    if is_semi_balanced(g).ok:
        return "root"
    raise InputError("digraph is neither a bidirected doubling nor semi-balanced")


def _order(g: Digraph, text: str) -> EdgeOrder:
    if text == "labels":
        return EdgeOrder.labels(g)
    try:
        seq = [int(a) for a in text.split(",")]
    except ValueError:
        raise InputError(f"bad edge order {text!r}") from None
    if sorted(seq) != sorted(g.edges):
        raise InputError("edge order must list every edge id exactly once")
    return EdgeOrder.from_sequence(seq)


def _load(args):
    g, lists = parse_graph(_read(args.graph))
    if getattr(args, "ribbon", None):
        lists = {**lists, **parse_ribbon(_read(args.ribbon))}
    return g, lists


def _tree_set(g, lists, args, target) -> DissectingTreeSet:
    if args.trees:
        trees = parse_trees(_read(args.trees))
        rep = verify_dissection(g, DissectingTreeSet(tuple(trees), target))
        if not rep.valid:
            raise DissectionError(f"tree set is not a dissection: {rep.reason}")
        return DissectingTreeSet(tuple(trees), target, True)
    if target == "symmetric":
        return sympoly_dissection(g)
    r = ribbon_for(g, lists)
    v0 = g.vertices[0] if args.base_vertex is None else args.base_vertex
    e0 = args.base_edge if args.base_edge is not None else r.rotation[v0][0]
    return jaeger_dissection(g, r, v0, e0)


def cmd_hstar(args) -> int:
    g, lists = _load(args)
    target = _target(g)
    methods = METHODS if args.method == "all" else (args.method,)
    base = g.vertices[0] if args.base_vertex is None else args.base_vertex
    if base not in g.vertices:
        raise InputError(f"unknown vertex {base}")
    order = _order(g, args.order)
    if "away" in methods and target != "symmetric":
        if args.method == "away":
            raise InputError("the away-edge statistic needs a bidirected doubling")
        methods = tuple(m for m in methods if m != "away")

    results = {}
    ts = None
    if any(m != "ehrhart" for m in methods):
        ts = _tree_set(g, lists, args, target)
    for m in methods:
        if m == "away":
            results[f"away[v={base}]"] = hstar_away(g, ts, base)
        elif m == "passivity":
            results["passivity[order]"] = hstar_passivity(g, ts, order)
            if args.random_orders:
                rng = random.Random(args.seed)
                for i in range(args.random_orders):
                    results[f"passivity[random {i}]"] = hstar_passivity(g, ts, EdgeOrder.random(g, rng))
        elif m == "visibility":
            simps = simplices(g, ts.trees, target)
            if target == "symmetric":
                results[f"visibility[q=base {base}]"] = hstar_visibility(simps, q_basepoint(g, base))
            results["visibility[q=order]"] = hstar_visibility(simps, q_order(g, order))
        else:
            results["ehrhart"] = ehrhart_hstar(polytope_vertices(g, target))[1]

    distinct = {h.coefficients for h in results.values()}
    agree = len(distinct) == 1
    value = next(iter(results.values()))
    if args.format == "record":
        for label, h in results.items():
            sys.stdout.write(format_record({
                "graph": graph_hash(g), "target": target, "method": label,
                "base_vertex": base, "order": order.sequence(),
                "trees": len(ts) if ts is not None else "-",
                "verified": str(ts.verified).lower() if ts is not None else "-",
                "coefficients": list(h.coefficients)}))
            sys.stdout.write("\n")
        sys.stdout.write(f"agree={str(agree).lower()}\n")
    elif len(results) == 1:
        print(value)
    else:
        for label, h in results.items():
            print(f"{label}: {h}")
        verdict = "all methods agree" if agree else "METHODS DISAGREE"
        print(f"h* = {value}, {verdict}")
    return OK if agree else DISAGREE


def cmd_verify(args) -> int:
    g, _ = _load(args)
    target = _target(g)
    trees = parse_trees(_read(args.trees))
    rep = verify_dissection(g, DissectingTreeSet(tuple(trees), target))
    if args.format == "record":
        sys.stdout.write(format_record({
            "graph": graph_hash(g), "target": target, "trees": rep.size,
            "valid": str(rep.valid).lower(), "reason": rep.reason,
            "volume": rep.volume if rep.volume is not None else "-"}))
        return OK if rep.valid else DISAGREE
    print("valid" if rep.valid else f"invalid: {rep.reason}")
    if rep.volume is not None:
        print(f"normalized volume {rep.volume}, {rep.size} trees")
    for (i, j), sep in sorted(rep.certificates.items()):
        if sep.kind == "cut":
            print(f"  T{i + 1} | T{j + 1}: cut {sorted(sep.shore0)} / {sorted(sep.shore1)}")
        else:
            print(f"  T{i + 1} | T{j + 1}: different facets")
    return OK if rep.valid else DISAGREE


def cmd_dissect(args) -> int:
    g, lists = _load(args)
    target = _target(g)
    ts = _tree_set(g, lists, argparse.Namespace(trees=None, base_vertex=args.base_vertex,
                                                base_edge=args.base_edge), target)
    text = format_trees(ts.trees)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def _paper_k3() -> bool:
    g = figures.k3()
    ts = sympoly_dissection(g)
    want = HStarPolynomial((1, 4, 1))
    ok = True
    for v in g.vertices:
        ok &= hstar_away(g, ts, v) == want
    ok &= hstar_passivity(g, ts, EdgeOrder.labels(g)) == want
    simps = simplices(g, ts.trees, "symmetric")
    ok &= hstar_visibility(simps, q_basepoint(g, g.vertices[0])) == want
    ok &= hstar_visibility(simps, q_order(g, EdgeOrder.labels(g))) == want
    ehr, h = ehrhart_hstar(polytope_vertices(g, "symmetric"))
    ok &= h == want and ehr.counts[:3] == (1, 7, 19)
    panel = [internal_semi_passivity(g, t, EdgeOrder.labels(g))[0] for t in figures.k3_trees()]
    ok &= panel == [1, 1, 0, 2, 1, 1]
    print(f"k3: h* = {h}, panel semi-passivities {panel}")
    return ok


def _paper_fig2() -> bool:
    g, r, v0, e0 = figures.fig3()
    ts = jaeger_dissection(g, r, v0, e0)
    want = set(figures.grid_trees())
    order = EdgeOrder.labels(g)
    pas = [internal_semi_passivity(g, t, order)[0] for t in figures.grid_trees()]
    h = hstar_passivity(g, ts, order)
    hv = hstar_visibility(simplices(g, ts.trees, "root"), q_order(g, order))
    ho = ehrhart_hstar(root_vertices(g))[1]
    print(f"fig2: {len(ts)} Jaeger trees, semi-passivities {pas}, h* = {h}")
    return set(ts.trees) == want and pas == [1, 0, 2, 1] and h == hv == ho == HStarPolynomial((1, 2, 1))


def _paper_negative(name: str) -> bool:
    ok = True
    if name == "fig3-negative":
        g = figures.grid()
        ok = verify_dissection(g, DissectingTreeSet(tuple(figures.fig3_trees()), "root")).valid
        print(f"fig3: tree set {'verifies' if ok else 'FAILS'} as a dissection")
    for f in negative_suite():
        if not f.name.startswith(name.split("-")[0]):
            continue
        print(f"{f.name}: {f.statistic} {f.values}, distribution {f.distribution}; "
              f"{'mismatch confirmed' if f.mismatch else 'NO MISMATCH'}: {f.detail}")
        ok &= f.mismatch
    return ok


PAPER = {
    "k3": _paper_k3,
    "fig2": _paper_fig2,
    "fig3-negative": lambda: _paper_negative("fig3-negative"),
    "fig4-negative": lambda: _paper_negative("fig4-negative"),
}


def cmd_paper(args) -> int:
    ok = PAPER[args.example]()
    print("pass" if ok else "FAIL")
    return OK if ok else DISAGREE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphpoly", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp):
        sp.add_argument("--graph", required=True, help="graph file or bundled example name")
        sp.add_argument("--ribbon", help="file with 'r <vertex> <edges...>' lines")
        sp.add_argument("--format", choices=("text", "record"), default="text")

    h = sub.add_parser("hstar", help="compute the h*-polynomial")
    graph_args(h)
    h.add_argument("--method", choices=METHODS + ("all",), default="all")
    h.add_argument("--trees", help="tree-set file; built automatically if omitted")
    h.add_argument("--base-vertex", type=int)
    h.add_argument("--base-edge", type=int, help="base edge for the Jaeger tour")
    h.add_argument("--order", default="labels", help="'labels' or comma-separated edge ids")
    h.add_argument("--random-orders", type=int, default=0, help="extra random orders to check")
    h.add_argument("--seed", type=int, default=0)
    h.set_defaults(func=cmd_hstar)

    v = sub.add_parser("verify", help="check a dissecting tree set")
    graph_args(v)
    v.add_argument("--trees", required=True)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dissect", help="construct a dissecting tree set")
    graph_args(d)
    d.add_argument("--base-vertex", type=int)
    d.add_argument("--base-edge", type=int)
    d.add_argument("--out")
    d.set_defaults(func=cmd_dissect)

    pp = sub.add_parser("paper", help="reproduce a worked example")
    pp.add_argument("example", choices=sorted(PAPER))
    pp.set_defaults(func=cmd_paper)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return args.func(args)
    except NonGenericPointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return GENERIC
    except (ParseError, GraphError, InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT
    except (DissectionError, InconsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DISAGREE


if __name__ == "__main__":
    sys.exit(main())
