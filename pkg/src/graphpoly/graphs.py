"""Directed multigraphs, spanning trees and fundamental cuts.

Undirected graphs are handled through their bidirected doubling, so every
object in this package is a :class:`Digraph` with explicit integer edge ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple

Vertex = Hashable
SpanningTree = frozenset  # frozenset of edge ids

MAX_TREES = 10**6


class GraphError(ValueError):
    """Malformed graph or a precondition on a graph that does not hold."""


@dataclass(frozen=True)
class Digraph:
    """A loopless directed multigraph with labelled edges.

    ``edges`` maps an edge id to its ``(tail, head)`` pair. ``pairing`` is
    present when the digraph is the doubling of an undirected graph and maps
    every edge id to the id of its reverse.
    """

    vertices: tuple
    edges: Mapping[int, tuple]
    pairing: Mapping[int, int] | None = None
    coords: Mapping[Vertex, tuple] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("vertex ids must be distinct")
        vset = set(self.vertices)
        for eid, (t, h) in self.edges.items():
            if not isinstance(eid, int) or eid < 1:
                raise GraphError(f"edge id {eid!r} is not a positive integer")
            if t not in vset or h not in vset:
                raise GraphError(f"edge {eid} has an endpoint outside the vertex set")
            if t == h:
                raise GraphError(f"edge {eid} is a loop")
        if self.pairing is not None:
            for e, f in self.pairing.items():
                if e == f or self.pairing.get(f) != e:
                    raise GraphError("pairing must be a fixed-point-free involution")
                if self.edges[e] != self.edges[f][::-1]:
                    raise GraphError(f"edges {e} and {f} are not reverses of each other")
            if set(self.pairing) != set(self.edges):
                raise GraphError("pairing must cover every edge")
        object.__setattr__(self, "edges", dict(sorted(self.edges.items())))

    # construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable[tuple], coords=None) -> "Digraph":
        """Build from ``(id, tail, head)`` triples.

        If every edge has exactly one reverse partner the pairing is
        detected automatically.
        """
        edges = list(edges)
        emap = {int(e): (t, h) for e, t, h in edges}
        if len(emap) != len(edges):
            raise GraphError("duplicate edge id")
        return cls(tuple(vertices), emap, _detect_pairing(emap), coords)

    @classmethod
    def from_undirected(cls, vertices: Iterable, edges: Iterable[tuple], coords=None) -> "Digraph":
        """Bidirected doubling: undirected edge ``i`` (1-based position) becomes
        ``2i-1`` oriented as written and ``2i`` reversed."""
        emap, pairing = {}, {}
        for i, (a, b) in enumerate(edges, start=1):
            emap[2 * i - 1] = (a, b)
            emap[2 * i] = (b, a)
            pairing[2 * i - 1], pairing[2 * i] = 2 * i, 2 * i - 1
        return cls(tuple(vertices), emap, pairing, coords)

    # basic queries ------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def is_bidirected(self) -> bool:
        return self.pairing is not None

    def tail(self, e: int):
        return self.edges[e][0]

    def head(self, e: int):
        return self.edges[e][1]

    def other_end(self, e: int, v):
        t, h = self.edges[e]
        if v == t:
            return h
        if v == h:
            return t
        raise GraphError(f"vertex {v!r} is not an endpoint of edge {e}")

    def incident(self, v) -> list[int]:
        return [e for e, (t, h) in self.edges.items() if v in (t, h)]

    def subgraph(self, edge_ids: Iterable[int]) -> "Digraph":
        """Spanning subgraph on the same vertex set, keeping edge ids."""
        keep = set(edge_ids)
        emap = {e: th for e, th in self.edges.items() if e in keep}
        return Digraph(self.vertices, emap, _detect_pairing(emap), self.coords)

    def is_connected(self) -> bool:
        return _is_connected(self.vertices, self.edges.values())

    def underlying_pairs(self) -> list[tuple]:
        """Undirected edge list, one entry per directed pair in a doubling."""
        if self.pairing is None:
            return [th for th in self.edges.values()]
        return [self.edges[e] for e in self.edges if e < self.pairing[e]]


def _detect_pairing(emap: Mapping[int, tuple]) -> dict[int, int] | None:
    by_arc: dict[tuple, list[int]] = {}
    for e, th in emap.items():
        by_arc.setdefault(th, []).append(e)
    pairing = {}
    for e, (t, h) in emap.items():
        rev = by_arc.get((h, t), [])
        if len(rev) != 1 or len(by_arc[(t, h)]) != 1:
            return None
        pairing[e] = rev[0]
    return pairing or None


def _is_connected(vertices, arcs) -> bool:
    vertices = list(vertices)
    if not vertices:
        return False
    adj = {v: [] for v in vertices}
    for t, h in arcs:
        adj[t].append(h)
        adj[h].append(t)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


# semi-balancedness -------------------------------------------------------


class SemiBalance(NamedTuple):
    ok: bool
    potential: dict | None  # vertex -> int with l(head) = l(tail) + 1
    cycle: list[int] | None  # violating cycle as edge ids


def is_semi_balanced(g: Digraph) -> SemiBalance:
    """Decide semi-balancedness by propagating a vertex potential.

    The potential is normalised to 0 at the first vertex of each component.
    On failure an unbalanced cycle (the tree paths plus the offending edge)
    is returned instead.
    """
    adj: dict = {v: [] for v in g.vertices}
    for e, (t, h) in g.edges.items():
        adj[t].append((e, h, 1))
        adj[h].append((e, t, -1))
    pot: dict = {}
    parent: dict = {}
    for root in g.vertices:
        if root in pot:
            continue
        pot[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e, w, step in adj[u]:
                if w not in pot:
                    pot[w] = pot[u] + step
                    parent[w] = (e, u)
                    queue.append(w)
                elif pot[w] != pot[u] + step:
                    return SemiBalance(False, None, _close_cycle(parent, u, w, e))
    return SemiBalance(True, pot, None)


def _close_cycle(parent, u, w, e) -> list[int]:
    def path_up(x):
        out = [x]
        while parent[x] is not None:
            x = parent[x][1]
            out.append(x)
        return out

    pu, pw = path_up(u), path_up(w)
    common = next(x for x in pu if x in set(pw))
    edges = []
    x = u
    while x != common:
        edges.append(parent[x][0])
        x = parent[x][1]
    back = []
    x = w
    while x != common:
        back.append(parent[x][0])
        x = parent[x][1]
    return edges[::-1] + [e] + back


# spanning trees ----------------------------------------------------------


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x


def iter_spanning_trees(g: Digraph) -> Iterator[SpanningTree]:
    """Yield spanning trees in lexicographic order of sorted edge-id tuples.

    Branching is include-then-exclude over edges in id order; an include is
    a contraction (the endpoints merge), an exclude a deletion.
    """
    if not g.is_connected():
        raise GraphError("spanning trees requested for a disconnected graph")
    eids = list(g.edges)
    need = g.n - 1
    m = len(eids)

    def rec(i: int, comp: dict, chosen: list[int]):
        if len(chosen) == need:
            yield frozenset(chosen)
            return
        if m - i < need - len(chosen):
            return
        e = eids[i]
        t, h = g.edges[e]
        ct, ch = comp[t], comp[h]
        if ct != ch:
            merged = {v: (ct if c == ch else c) for v, c in comp.items()}
            chosen.append(e)
            yield from rec(i + 1, merged, chosen)
            chosen.pop()
        # excluding e must keep the remaining edges able to connect everything
        if _still_connectable(g, eids[i + 1:], comp, len(chosen), need):
            yield from rec(i + 1, comp, chosen)

    if need == 0:
        yield frozenset()
        return
    yield from rec(0, {v: v for v in g.vertices}, [])


def _still_connectable(g, rest, comp, have, need) -> bool:
    dsu = _DSU(set(comp.values()))
    k = len(dsu.parent)
    for e in rest:
        a, b = dsu.find(comp[g.tail(e)]), dsu.find(comp[g.head(e)])
        if a != b:
            dsu.parent[a] = b
            k -= 1
            if k == 1:
                return True
    return k == 1


def spanning_trees(g: Digraph, limit: int = MAX_TREES) -> list[SpanningTree]:
    out = []
    for t in iter_spanning_trees(g):
        out.append(t)
        if len(out) > limit:
            raise GraphError(f"more than {limit} spanning trees; refusing to enumerate")
    return out


def is_spanning_tree(g: Digraph, t: Iterable[int]) -> bool:
    t = set(t)
    if len(t) != g.n - 1 or not t <= set(g.edges):
        return False
    return _is_connected(g.vertices, [g.edges[e] for e in t])


# cuts ---------------------------------------------------------------------


@dataclass(frozen=True)
class Cut:
    tree_edge: int
    shore0: frozenset  # contains the tail of tree_edge
    shore1: frozenset  # contains the head of tree_edge
    cut_edges: frozenset
    parallel: frozenset
    opposite: frozenset

    @property
    def is_directed(self) -> bool:
        """All cut edges cross in the same direction."""
        return not self.parallel or not self.opposite


def tail_side(g: Digraph, t: SpanningTree, e: int) -> frozenset:
    """Vertices of the component of ``t - e`` containing the tail of ``e``."""
    if e not in t:
        raise GraphError(f"edge {e} is not in the tree")
    adj: dict = {v: [] for v in g.vertices}
    for f in t:
        if f != e:
            a, b = g.edges[f]
            adj[a].append(b)
            adj[b].append(a)
    start = g.tail(e)
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def fundamental_cut(g: Digraph, t: SpanningTree, e: int) -> Cut:
    v0 = tail_side(g, t, e)
    v1 = frozenset(g.vertices) - v0
    cut, par, opp = set(), set(), set()
    for f, (a, b) in g.edges.items():
        if (a in v0) != (b in v0):
            cut.add(f)
            (par if b in v1 else opp).add(f)
    return Cut(e, v0, v1, frozenset(cut), frozenset(par), frozenset(opp))


def tree_cuts(g: Digraph, t: SpanningTree) -> dict[int, Cut]:
    return {e: fundamental_cut(g, t, e) for e in sorted(t)}


def points_away(g: Digraph, t: SpanningTree, v, e: int) -> bool:
    """True iff ``v`` lies in the tail-side component of ``t - e``."""
    if v not in set(g.vertices):
        raise GraphError(f"unknown vertex {v!r}")
    return v in tail_side(g, t, e)


def away_count(g: Digraph, t: SpanningTree, v) -> int:
    return sum(points_away(g, t, v, e) for e in t)
