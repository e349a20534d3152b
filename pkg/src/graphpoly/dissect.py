"""Building and checking dissecting tree sets.

Two targets are supported: ``"root"`` (the root polytope of a semi-balanced
digraph, dissected by tree simplices) and ``"symmetric"`` (the symmetric
edge polytope of a bidirected doubling, dissected by cones from the origin
over boundary tree simplices).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .geometry import (Separation, cone_simplex, is_unimodular, root_vertices, separating_cut,
                       tree_simplex)
from .graphs import Digraph, GraphError, is_semi_balanced, is_spanning_tree, spanning_trees
from .hstar import ehrhart_hstar, polytope_vertices
from .ribbon import RibbonStructure, is_jaeger


class DissectionError(RuntimeError):
    pass


@dataclass(frozen=True)
class DissectingTreeSet:
    trees: tuple
    target: str  # "root" or "symmetric"
    verified: bool = False

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)


def _target_for(g: Digraph) -> str:
    if g.is_bidirected:
        return "symmetric"
    if is_semi_balanced(g).ok:
        return "root"
    raise GraphError("digraph is neither a bidirected doubling nor semi-balanced")


def normalized_volume(g: Digraph, target: str | None = None) -> int:
    target = target or _target_for(g)
    return ehrhart_hstar(polytope_vertices(g, target))[0].normalized_volume()


# Jaeger trees ------------------------------------------------------------


def jaeger_trees(g: Digraph, r: RibbonStructure, v0, e0: int) -> list[frozenset]:
    return [t for t in spanning_trees(g) if is_jaeger(g, r, v0, e0, t)]


def jaeger_dissection(g: Digraph, r: RibbonStructure, v0, e0: int, verify: bool = True) -> DissectingTreeSet:
    if not is_semi_balanced(g).ok:
        raise GraphError("Jaeger dissections need a semi-balanced digraph")
    ts = DissectingTreeSet(tuple(jaeger_trees(g, r, v0, e0)), "root")
    if verify:
        report = verify_dissection(g, ts)
        if not report.valid:
            raise DissectionError(f"Jaeger trees failed verification: {report.reason}")
        ts = DissectingTreeSet(ts.trees, "root", True)
    return ts


# boundary structure of the symmetric edge polytope -----------------------


def boundary_potential(g: Digraph, t: frozenset):
    """Facet normal supporting the tree simplex of ``t`` on the boundary, or None.

    The normal must increase by one along every tree edge, which fixes it up
    to a constant; the simplex lies on the boundary iff it is 1-Lipschitz on
    the whole graph. Returned as a tuple in vertex order, minimum 0.
    """
    f = {g.vertices[0]: 0}
    adj = {v: [] for v in g.vertices}
    for e in t:
        a, b = g.edges[e]
        adj[a].append((b, 1))
        adj[b].append((a, -1))
    stack = [g.vertices[0]]
    while stack:
        u = stack.pop()
        for w, step in adj[u]:
            if w not in f:
                f[w] = f[u] + step
                stack.append(w)
    if len(f) != g.n:
        raise GraphError("not a spanning tree")
    if any(abs(f[a] - f[b]) > 1 for a, b in g.edges.values()):
        return None
    lo = min(f.values())
    return tuple(f[v] - lo for v in g.vertices)


@dataclass(frozen=True)
class Facet:
    potential: tuple
    edges: frozenset  # directed edges with potential increase 1

    def digraph(self, g: Digraph) -> Digraph:
        return g.subgraph(self.edges)


def facets(g: Digraph) -> list[Facet]:
    """Facets of the symmetric edge polytope, from integer 1-Lipschitz potentials."""
    if not g.is_connected():
        raise GraphError("graph must be connected")
    nbrs = {v: set() for v in g.vertices}
    for a, b in g.edges.values():
        nbrs[a].add(b)
        nbrs[b].add(a)
    order = [g.vertices[0]]
    for v in order:
        for w in sorted(nbrs[v]):
            if w not in order:
                order.append(w)
    out = []

    def rec(i, f):
        if i == len(order):
            tight = frozenset(e for e, (a, b) in g.edges.items() if f[b] - f[a] == 1)
            if g.subgraph(tight).is_connected():
                lo = min(f.values())
                out.append(Facet(tuple(f[v] - lo for v in g.vertices), tight))
            return
        v = order[i]
        vals = [f[w] for w in nbrs[v] if w in f]
        for x in range(max(vals) - 1, min(vals) + 2):
            f[v] = x
            rec(i + 1, f)
            del f[v]

    if g.n == 1:
        return []
    rec(1, {order[0]: 0})
    return sorted(out, key=lambda fc: fc.potential)


# search --------------------------------------------------------------------


class _BudgetExceeded(Exception):
    pass


def _cliques(trees, g, target: int, limit: int, budget: int):
    """Sets of ``target`` pairwise interior-disjoint trees, in canonical order.

    Branches over candidates in index order and prunes when too few
    compatible candidates remain. Returns ``(found, complete)``.
    """
    k = len(trees)
    compat = [0] * k
    for i, j in itertools.combinations(range(k), 2):
        if separating_cut(g, trees[i], trees[j]) is not None:
            compat[i] |= 1 << j
            compat[j] |= 1 << i
    found = []
    nodes = 0

    def rec(chosen, cand):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        if len(chosen) == target:
            found.append([trees[i] for i in chosen])
            return len(found) >= limit
        while cand:
            if len(chosen) + bin(cand).count("1") < target:
                return False
            i = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            chosen.append(i)
            if rec(chosen, cand & compat[i]):
                return True
            chosen.pop()
        return False

    try:
        stopped = rec([], (1 << k) - 1)
    except _BudgetExceeded:
        return found, False
    return found, not stopped


@dataclass
class SearchResult:
    dissections: list
    complete: bool  # False if the search budget or the limit cut enumeration short


def _facet_parts(g: Digraph, limit: int, budget: int):
    parts = []
    complete = True
    total = 0
    for fc in facets(g):
        sub = fc.digraph(g)
        trees = spanning_trees(sub)
        vol = ehrhart_hstar(root_vertices(sub))[0].normalized_volume()
        total += vol
        found, done = _cliques(trees, sub, vol, limit, budget)
        if not found:
            raise DissectionError(f"no dissection found for facet {fc.potential}")
        complete &= done
        parts.append(found)
    return parts, total, complete


def sympoly_dissection(g: Digraph, budget: int = 10**6) -> DissectingTreeSet:
    """A dissecting tree set for the boundary of the symmetric edge polytope.

    Each facet is a semi-balanced root polytope; its trees are searched for
    a pairwise interior-disjoint family whose size is the facet's normalized
    volume. The facet volumes must add up to the volume of the whole
    polytope, which is checked against the lattice-point oracle.
    """
    if not g.is_bidirected:
        raise GraphError("symmetric edge polytope dissections need a bidirected doubling")
    parts, total, _ = _facet_parts(g, 1, budget)
    vol = normalized_volume(g, "symmetric")
    if total != vol:
        raise DissectionError(f"facet volumes add to {total}, polytope volume is {vol}")
    trees = tuple(t for part in parts for t in part[0])
    return DissectingTreeSet(trees, "symmetric", True)


def enumerate_dissections(g: Digraph, target: str | None = None, limit: int = 50,
                          budget: int = 10**6) -> SearchResult:
    """Up to ``limit`` distinct dissecting tree sets; ``complete`` says whether that is all."""
    target = target or _target_for(g)
    if target == "root":
        trees = spanning_trees(g)
        found, complete = _cliques(trees, g, normalized_volume(g, "root"), limit, budget)
        return SearchResult([DissectingTreeSet(tuple(f), "root", True) for f in found], complete)
    parts, _, complete = _facet_parts(g, limit, budget)
    out = []
    for combo in itertools.product(*parts):
        out.append(DissectingTreeSet(tuple(t for part in combo for t in part), "symmetric", True))
        if len(out) >= limit:
            complete = complete and len(out) == _product_size(parts)
            break
    return SearchResult(out, complete)


def _product_size(parts) -> int:
    n = 1
    for p in parts:
        n *= len(p)
    return n


# verification ------------------------------------------------------------


@dataclass
class VerificationReport:
    valid: bool
    reason: str = ""
    volume: int | None = None
    size: int = 0
    failing_pair: tuple | None = None
    certificates: dict = field(default_factory=dict)  # (i, j) -> Separation


def verify_dissection(g: Digraph, ts) -> VerificationReport:
    """Check unimodularity, pairwise interior-disjointness and the volume count."""
    target = ts.target if hasattr(ts, "target") else _target_for(g)
    trees = list(ts)
    rep = VerificationReport(False, size=len(trees))
    for i, t in enumerate(trees):
        if not is_spanning_tree(g, t):
            rep.reason = f"tree {i} is not a spanning tree"
            return rep
    if target == "root":
        if not is_semi_balanced(g).ok:
            rep.reason = "digraph is not semi-balanced"
            return rep
        keys = [0] * len(trees)
        make = tree_simplex
    else:
        if not g.is_bidirected:
            rep.reason = "symmetric target needs a bidirected doubling"
            return rep
        keys = [boundary_potential(g, t) for t in trees]
        for i, k in enumerate(keys):
            if k is None:
                rep.reason = f"tree {i} does not lie on the boundary"
                return rep
        make = cone_simplex
    for i, t in enumerate(trees):
        if not is_unimodular(make(g, t)):
            rep.reason = f"simplex of tree {i} is not unimodular"
            return rep
    for i, j in itertools.combinations(range(len(trees)), 2):
        if keys[i] != keys[j]:
            rep.certificates[(i, j)] = Separation("facets")
            continue
        sep = separating_cut(g, trees[i], trees[j])
        if sep is None:
            rep.reason = f"simplices of trees {i} and {j} overlap"
            rep.failing_pair = (i, j)
            return rep
        rep.certificates[(i, j)] = Separation("cut", sep[0], sep[1])
    rep.volume = normalized_volume(g, target)
    if rep.volume != len(trees):
        rep.reason = f"volume mismatch: {len(trees)} simplices, normalized volume {rep.volume}"
        return rep
    rep.valid = True
    rep.reason = "ok"
    return rep


def verified(g: Digraph, ts: DissectingTreeSet) -> DissectingTreeSet:
    """Return ``ts`` marked verified, or raise with the verification failure."""
    rep = verify_dissection(g, ts)
    if not rep.valid:
        raise DissectionError(rep.reason)
    return DissectingTreeSet(tuple(ts.trees), ts.target, True)
