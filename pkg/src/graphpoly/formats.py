"""Plain-text graph, ribbon and tree-set files.

Graph file::

    # comment
    v 3                 vertices 1..3
    e 1 1 2             directed edge id 1 from vertex 1 to vertex 2
    u 1 1 2             undirected edge 1, doubled into 2*1-1 (1->2) and 2*1 (2->1)
    c 1 0 0             coordinates of vertex 1 (exact rationals, for ribbons)
    r 1 5 2 1 6         cyclic order of the edges at vertex 1

``e`` and ``u`` lines may not be mixed. Ribbon lines may also live in a
separate file. Tree-set files hold one ``t <edge id> ...`` line per tree.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .graphs import Digraph, GraphError
from .ribbon import RibbonStructure


class ParseError(ValueError):
    pass


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {tok!r}") from None


def parse_graph(text: str) -> tuple[Digraph, dict]:
    """Return the digraph and the (possibly empty) explicit ribbon lists."""
    count = None
    directed, undirected, coords, ribbon = [], [], {}, {}
    for lineno, toks in _lines(text):
        kind, args = toks[0], toks[1:]
        if kind == "v":
            if len(args) != 1:
                raise ParseError(f"line {lineno}: 'v' takes one argument")
            count = _int(args[0], lineno)
        elif kind in ("e", "u"):
            if len(args) != 3:
                raise ParseError(f"line {lineno}: '{kind}' takes an id and two endpoints")
            row = tuple(_int(a, lineno) for a in args)
            (directed if kind == "e" else undirected).append(row)
        elif kind == "c":
            if len(args) != 3:
                raise ParseError(f"line {lineno}: 'c' takes a vertex and two coordinates")
            try:
                coords[_int(args[0], lineno)] = (Fraction(args[1]), Fraction(args[2]))
            except ValueError:
                raise ParseError(f"line {lineno}: bad coordinate") from None
        elif kind == "r":
            if not args:
                raise ParseError(f"line {lineno}: 'r' needs a vertex")
            ribbon[_int(args[0], lineno)] = [_int(a, lineno) for a in args[1:]]
        else:
            raise ParseError(f"line {lineno}: unknown record type {kind!r}")
    if count is None:
        raise ParseError("missing 'v <count>' line")
    if directed and undirected:
        raise ParseError("cannot mix 'e' and 'u' lines")
    vertices = tuple(range(1, count + 1))
    try:
        if undirected:
            ids = [r[0] for r in undirected]
            if sorted(ids) != list(range(1, len(ids) + 1)):
                raise ParseError("undirected edge ids must be 1..k")
            g = Digraph.from_undirected(vertices, [r[1:] for r in sorted(undirected)], coords or None)
        else:
            g = Digraph.from_edges(vertices, directed, coords or None)
            if sorted(g.edges) != list(range(1, g.m + 1)):
                raise ParseError("edge ids must be 1..m")
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    return g, ribbon


def parse_ribbon(text: str) -> dict:
    out = {}
    for lineno, toks in _lines(text):
        if toks[0] != "r" or len(toks) < 2:
            raise ParseError(f"line {lineno}: expected 'r <vertex> <edge> ...'")
        out[_int(toks[1], lineno)] = [_int(a, lineno) for a in toks[2:]]
    return out


def ribbon_for(g: Digraph, lists: dict) -> RibbonStructure:
    """Explicit lists where given, else angular order from coordinates, else declaration order."""
    if g.coords is not None:
        base = RibbonStructure.from_coordinates(g).rotation
    else:
        base = RibbonStructure.declaration_order(g).rotation
    rot = {v: tuple(lists[v]) if v in lists else base[v] for v in g.vertices}
    r = RibbonStructure(rot)
    try:
        r.check(g)
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    return r


def parse_trees(text: str) -> list[frozenset]:
    trees = []
    for lineno, toks in _lines(text):
        if toks[0] != "t":
            raise ParseError(f"line {lineno}: expected 't <edge id> ...'")
        trees.append(frozenset(_int(a, lineno) for a in toks[1:]))
    return trees


def format_trees(trees: Iterable[frozenset]) -> str:
    return "".join("t " + " ".join(map(str, sorted(t))) + "\n" for t in trees)


def read_graph(path) -> tuple[Digraph, dict]:
    return parse_graph(Path(path).read_text())


def read_trees(path) -> list[frozenset]:
    return parse_trees(Path(path).read_text())


def format_value(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_record(fields: dict) -> str:
    """Line-delimited ``key=value`` record; sequences become comma lists."""
    out = []
    for k, v in fields.items():
        if isinstance(v, (list, tuple)):
            v = ",".join(format_value(a) if isinstance(a, (int, Fraction)) else str(a) for a in v)
        elif isinstance(v, (int, Fraction)) and not isinstance(v, bool):
            v = format_value(v)
        out.append(f"{k}={v}")
    return "\n".join(out) + "\n"
