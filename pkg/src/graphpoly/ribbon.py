"""Ribbon structures, Bernardi tours and the tree statistics built on them.

A ribbon structure fixes a cyclic order of the edge-ends at every vertex.
Every directed edge is its own edge-end, so in a bidirected doubling the two
copies of an undirected edge occupy separate slots in the rotation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Mapping, Sequence

from .graphs import Digraph, GraphError, SpanningTree, tree_cuts


@dataclass(frozen=True)
class RibbonStructure:
    rotation: Mapping  # vertex -> tuple of edge ids in cyclic order

    def __post_init__(self):
        succ = {}
        for v, cyc in self.rotation.items():
            if len(set(cyc)) != len(cyc):
                raise GraphError(f"edge repeated in the rotation at {v!r}")
            for i, e in enumerate(cyc):
                succ[(v, e)] = cyc[(i + 1) % len(cyc)]
        object.__setattr__(self, "_succ", succ)

    def succ(self, v, e: int) -> int:
        try:
            return self._succ[(v, e)]
        except KeyError:
            raise GraphError(f"edge {e} is not incident to {v!r} in the ribbon") from None

    def check(self, g: Digraph) -> None:
        for v in g.vertices:
            if sorted(self.rotation.get(v, ())) != sorted(g.incident(v)):
                raise GraphError(f"rotation at {v!r} does not list exactly its incident edges")

    @classmethod
    def from_lists(cls, g: Digraph, lists: Mapping) -> "RibbonStructure":
        rot = {v: tuple(lists[v]) if v in lists else tuple(g.incident(v)) for v in g.vertices}
        r = cls(rot)
        r.check(g)
        return r

    @classmethod
    def declaration_order(cls, g: Digraph) -> "RibbonStructure":
        return cls({v: tuple(g.incident(v)) for v in g.vertices})

    @classmethod
    def random(cls, g: Digraph, rng: random.Random) -> "RibbonStructure":
        rot = {}
        for v in g.vertices:
            inc = g.incident(v)
            rng.shuffle(inc)
            rot[v] = tuple(inc)
        return cls(rot)

    @classmethod
    def from_coordinates(cls, g: Digraph, coords: Mapping | None = None) -> "RibbonStructure":
        """Counter-clockwise rotation of a straight-line (or bent) drawing.

        Two edge-ends leaving a vertex in the same direction are ordered as
        if each edge were drawn bending to its left, the usual way of drawing
        both orientations of a bidirected edge: the incoming copy comes
        first, the outgoing copy second.
        """
        coords = coords if coords is not None else g.coords
        if coords is None:
            raise GraphError("no vertex coordinates available")
        pts = {v: tuple(Fraction(c) for c in coords[v]) for v in g.vertices}
        rot = {}
        for v in g.vertices:
            ends = []
            for e in g.incident(v):
                w = g.other_end(e, v)
                d = (pts[w][0] - pts[v][0], pts[w][1] - pts[v][1])
                if d == (0, 0):
                    raise GraphError(f"vertices {v!r} and {w!r} share coordinates")
                ends.append((d, 1 if g.tail(e) == v else 0, e))
            ends.sort(key=cmp_to_key(_ccw_cmp))
            rot[v] = tuple(e for _, _, e in ends)
        return cls(rot)


def _half(d) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    x, y = d
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _ccw_cmp(a, b) -> int:
    (da, oa, ea), (db, ob, eb) = a, b
    ha, hb = _half(da), _half(db)
    if ha != hb:
        return ha - hb
    cross = da[0] * db[1] - da[1] * db[0]
    if cross != 0:
        return -1 if cross > 0 else 1
    if oa != ob:
        return oa - ob
    return ea - eb


# tours --------------------------------------------------------------------

Tour = list  # list of (vertex, edge id) pairs


def bernardi_tour(g: Digraph, r: RibbonStructure, v0, e0: int, t: SpanningTree) -> Tour:
    """Walk the node-edge pairs: rotate past non-tree edges, cross tree edges."""
    if e0 not in g.edges or v0 not in g.edges[e0]:
        raise GraphError(f"base edge {e0} is not incident to base vertex {v0!r}")
    start = (v0, e0)
    tour = [start]
    u, e = start
    for _ in range(2 * g.m):
        if e in t:
            u = g.other_end(e, u)
        e = r.succ(u, e)
        if (u, e) == start:
            break
        tour.append((u, e))
    else:
        raise GraphError("tour did not close; ribbon is inconsistent with the graph")
    if len(tour) != 2 * g.m:
        raise GraphError(f"tour has length {len(tour)}, expected {2 * g.m}")
    return tour


@dataclass(frozen=True)
class EdgeOrder:
    """Total order on edge ids; ``rank[e]`` is 1 for the smallest edge."""

    rank: Mapping[int, int]

    def __post_init__(self):
        if sorted(self.rank.values()) != list(range(1, len(self.rank) + 1)):
            raise GraphError("edge order ranks must be a permutation of 1..m")

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "EdgeOrder":
        return cls({e: i for i, e in enumerate(seq, start=1)})

    @classmethod
    def labels(cls, g: Digraph) -> "EdgeOrder":
        return cls.from_sequence(sorted(g.edges))

    @classmethod
    def random(cls, g: Digraph, rng: random.Random) -> "EdgeOrder":
        seq = sorted(g.edges)
        rng.shuffle(seq)
        return cls.from_sequence(seq)

    def sequence(self) -> list[int]:
        return sorted(self.rank, key=self.rank.__getitem__)

    def max(self, edges: Iterable[int]) -> int:
        return max(edges, key=self.rank.__getitem__)


def tour_order(g: Digraph, tour: Tour) -> EdgeOrder:
    pos = {pair: i for i, pair in enumerate(tour)}
    seq = sorted(g.edges, key=lambda e: pos[(g.tail(e), e)])
    return EdgeOrder.from_sequence(seq)


def is_jaeger(g: Digraph, r: RibbonStructure, v0, e0: int, t: SpanningTree) -> bool:
    pos = {pair: i for i, pair in enumerate(bernardi_tour(g, r, v0, e0, t))}
    return all(pos[(tl, e)] < pos[(hd, e)] for e, (tl, hd) in g.edges.items() if e not in t)


# activity statistics -----------------------------------------------------


def internal_semi_passivity(g: Digraph, t: SpanningTree, order: EdgeOrder, cuts=None):
    """Return ``(count, flags)``; ``flags[e]`` is True for passive tree edges.

    A tree edge is passive when the largest edge of its fundamental cut
    stands opposite to it. ``cuts`` may be a precomputed
    :func:`~graphpoly.graphs.tree_cuts` result.
    """
    cuts = cuts if cuts is not None else tree_cuts(g, t)
    flags = {e: order.max(c.cut_edges) in c.opposite for e, c in cuts.items()}
    return sum(flags.values()), flags


def embedding_semi_passivity(g: Digraph, r: RibbonStructure, v0, e0: int, t: SpanningTree) -> int:
    order = tour_order(g, bernardi_tour(g, r, v0, e0, t))
    return internal_semi_passivity(g, t, order)[0]


def basepoint_passivity(g: Digraph, t: SpanningTree, v0, cuts=None) -> int:
    """Tree edges pointing away from ``v0`` whose cut is not consistently directed."""
    cuts = cuts if cuts is not None else tree_cuts(g, t)
    return sum(1 for c in cuts.values() if v0 in c.shore0 and not c.is_directed)
