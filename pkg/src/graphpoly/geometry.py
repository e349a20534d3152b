"""Exact lattice geometry for root polytopes and their tree simplices.

Points are tuples of integers or :class:`fractions.Fraction` indexed like
``g.vertices``. Nothing in here touches floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from ._lp import feasible_point
from .graphs import Digraph, SpanningTree, is_semi_balanced

Point = tuple


class GeometryError(ValueError):
    pass


class NonGenericPointError(GeometryError):
    """The reference point lies on a facet-defining hyperplane."""


# points and simplices ----------------------------------------------------


def edge_vector(g: Digraph, e: int) -> Point:
    """The vector 1_head - 1_tail."""
    t, h = g.edges[e]
    return tuple(1 if v == h else -1 if v == t else 0 for v in g.vertices)


def root_vertices(g: Digraph) -> list[Point]:
    """Vertex list of the root polytope (the symmetric edge polytope for a doubling)."""
    return [edge_vector(g, e) for e in g.edges]


def origin(g: Digraph) -> Point:
    return (0,) * g.n


@dataclass(frozen=True)
class Simplex:
    """A lattice simplex; ``labels[i]`` names vertex ``i`` (edge id, or None for the origin)."""

    points: tuple
    kind: str = "raw"  # "tree", "cone" or "raw"
    tree: SpanningTree | None = None
    labels: tuple | None = None

    @property
    def dim(self) -> int:
        return len(self.points) - 1

    def index_of(self, label) -> int:
        return self.labels.index(label)


def tree_simplex(g: Digraph, t: SpanningTree) -> Simplex:
    ids = tuple(sorted(t))
    return Simplex(tuple(edge_vector(g, e) for e in ids), "tree", frozenset(t), ids)


def cone_simplex(g: Digraph, t: SpanningTree) -> Simplex:
    ids = tuple(sorted(t))
    pts = (origin(g),) + tuple(edge_vector(g, e) for e in ids)
    return Simplex(pts, "cone", frozenset(t), (None,) + ids)


# exact linear algebra ----------------------------------------------------


def _rref(M: list[list[Fraction]]):
    """Row-reduce in place; return pivot columns."""
    rows, cols = len(M), len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [a / piv for a in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One exact solution of ``A x = b`` (free variables set to 0), or None."""
    cols = len(A[0])
    M = [[Fraction(a) for a in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    pivots = _rref(M)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = M[r][cols]
    return x


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(_rref([[Fraction(a) for a in r] for r in rows]))


def affine_rank(points: Sequence[Point]) -> int:
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


def smith_invariants(M: Sequence[Sequence[int]]) -> list[int]:
    """Non-zero invariant factors of an integer matrix (Smith normal form diagonal)."""
    A = [[int(a) for a in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    out = []
    k = 0
    while k < min(rows, cols):
        nz = [(abs(A[i][j]), i, j) for i in range(k, rows) for j in range(k, cols) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[k], A[pi] = A[pi], A[k]
        for row in A:
            row[k], row[pj] = row[pj], row[k]
        while True:
            piv = A[k][k]
            dirty = False
            for i in range(k + 1, rows):
                q = A[i][k] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[k])]
                if A[i][k]:
                    dirty = True
            for j in range(k + 1, cols):
                q = A[k][j] // piv
                if q:
                    for row in A:
                        row[j] -= q * row[k]
                if A[k][j]:
                    dirty = True
            if not dirty:
                bad = next(((i, j) for i in range(k + 1, rows) for j in range(k + 1, cols)
                            if A[i][j] % piv), None)
                if bad is None:
                    break
                # enforce divisibility by folding the offending row into row k
                A[k] = [a + b for a, b in zip(A[k], A[bad[0]])]
                continue
            _, pi, pj = min((abs(A[i][j]), i, j) for i in range(k, rows) for j in range(k, cols)
                            if A[i][j] and (i == k or j == k))
            A[k], A[pi] = A[pi], A[k]
            for row in A:
                row[k], row[pj] = row[pj], row[k]
        out.append(abs(A[k][k]))
        k += 1
    return out


def is_unimodular(s: Simplex) -> bool:
    """Difference vectors are independent and generate every lattice point of their span."""
    for p in s.points:
        if any(Fraction(a).denominator != 1 for a in p):
            raise GeometryError("unimodularity is only defined for lattice simplices")
    p0 = s.points[0]
    diffs = [[int(a) - int(b) for a, b in zip(p, p0)] for p in s.points[1:]]
    if not diffs:
        return True
    inv = smith_invariants(diffs)
    return len(inv) == len(diffs) and all(x == 1 for x in inv)


# functionals and visibility ----------------------------------------------


@dataclass(frozen=True)
class Functional:
    """Affine functional ``x -> coeffs . x + const`` with exact coefficients."""

    coeffs: tuple
    const: Fraction = Fraction(0)

    def __call__(self, p: Sequence) -> Fraction:
        return sum((Fraction(c) * a for c, a in zip(self.coeffs, p)), Fraction(0)) + self.const


def cut_functional(g: Digraph, shore1: Iterable) -> Functional:
    """Indicator of a vertex set, as a linear functional."""
    s1 = set(shore1)
    return Functional(tuple(Fraction(int(v in s1)) for v in g.vertices))


def facet_functional(s: Simplex, i: int) -> Functional:
    """Affine functional that is 0 on every vertex except ``i`` and 1 on ``i``.

    Only its restriction to the affine hull of ``s`` is canonical; outside
    the hull this returns the solution with free coordinates set to zero.
    """
    if affine_rank(s.points) != s.dim:
        raise GeometryError("degenerate simplex")
    n = len(s.points[0])
    A = [list(p) + [1] for p in s.points]
    b = [1 if j == i else 0 for j in range(len(s.points))]
    x = solve(A, b)
    return Functional(tuple(x[:n]), x[n])


def barycentric(s: Simplex, q: Sequence) -> list[Fraction]:
    """Barycentric coordinates of ``q`` (which must lie in the affine hull of ``s``)."""
    k = len(s.points)
    n = len(q)
    A = [[s.points[j][r] for j in range(k)] for r in range(n)] + [[1] * k]
    lam = solve(A, list(q) + [1])
    if lam is None:
        raise GeometryError("point is not in the affine hull of the simplex")
    if rank([list(p) + [1] for p in s.points]) != k:
        raise GeometryError("degenerate simplex")
    return lam


def visible_facets(s: Simplex, q: Sequence) -> set[int]:
    """Indices ``i`` whose opposite facet is visible from ``q``.

    The facet opposite vertex ``i`` is visible iff its facet functional is
    negative at ``q``; this value is the ``i``-th barycentric coordinate.
    """
    lam = barycentric(s, q)
    if any(x == 0 for x in lam):
        raise NonGenericPointError("reference point lies on a facet hyperplane")
    return {i for i, x in enumerate(lam) if x < 0}


class BarycentricMap:
    """Integer barycentric coordinates of many points at once.

    ``scaled(Z, t)`` returns ``D * lambda`` for the points of ``t * aff(s)``
    in the rows of ``Z``; ``D > 0`` is a fixed common denominator, so the
    signs are those of the true coordinates.
    """

    def __init__(self, s: Simplex):
        k = len(s.points)
        n = len(s.points[0])
        full = [[Fraction(s.points[j][r]) for j in range(k)] for r in range(n)] + [[Fraction(1)] * k]
        # pick k independent rows
        chosen: list[int] = []
        for r in range(n + 1):
            if rank([full[i] for i in chosen + [r]]) == len(chosen) + 1:
                chosen.append(r)
                if len(chosen) == k:
                    break
        if len(chosen) != k:
            raise GeometryError("degenerate simplex")
        sq = [full[r] for r in chosen]
        inv = [solve(sq, [Fraction(int(i == j)) for i in range(k)]) for j in range(k)]
        # inv[j] is column j of the inverse
        den = lcm(*(x.denominator for col in inv for x in col))
        self.rows = chosen
        self.n = n
        self.den = den
        self.matrix = np.array([[int(inv[j][i] * den) for j in range(k)] for i in range(k)], dtype=np.int64)

    def scaled(self, Z: np.ndarray, t: int) -> np.ndarray:
        ext = np.concatenate([Z, np.full((Z.shape[0], 1), t, dtype=np.int64)], axis=1)
        return ext[:, self.rows] @ self.matrix.T


# membership and lattice points -------------------------------------------


def contains_point(vertices: Sequence[Point], z: Sequence, t: int = 1) -> bool:
    """Exact test of ``z`` in ``t * conv(vertices)`` by a phase-one LP."""
    if t < 0:
        raise GeometryError("dilation must be non-negative")
    n = len(z)
    A = [[v[r] for v in vertices] for r in range(n)] + [[1] * len(vertices)]
    return feasible_point(A, list(z) + [t]) is not None


class _FlowMembership:
    """Vectorised membership for convex hulls of arc vectors 1_h - 1_t (and 0).

    For arc sets closed under reversal, ``z`` lies in ``t*P`` iff it sums to
    zero and ``f . z <= t`` for every integer 1-Lipschitz ``f``. For arc sets
    with a potential, iff ``z`` is a feasible transshipment (non-negative on
    every up-closed vertex set) whose potential value is ``t`` (at most ``t``
    when the origin is a vertex).
    """

    MAX_SUPPORT = 12

    def __init__(self, vertices: Sequence[Point]):
        self.ok = False
        n = len(vertices[0])
        arcs, has_origin = [], False
        for v in vertices:
            nz = [(i, a) for i, a in enumerate(v) if a != 0]
            if not nz:
                has_origin = True
                continue
            if len(nz) != 2 or sorted(a for _, a in nz) != [-1, 1]:
                return
            tail = next(i for i, a in nz if a == -1)
            head = next(i for i, a in nz if a == 1)
            arcs.append((tail, head))
        self.n = n
        self.has_origin = has_origin
        support = sorted({i for a in arcs for i in a})
        self.support = support
        if not arcs:
            self.mode = "origin"
            self.ok = True
            return
        if len(support) > self.MAX_SUPPORT:
            return
        sub = Digraph(tuple(support), {k + 1: a for k, a in enumerate(arcs)})
        if not sub.is_connected():
            return
        arcset = set(arcs)
        if all((h, t) in arcset for t, h in arcs):
            self.mode = "symmetric"
            self.F = self._lipschitz(support, arcs)
            self.ok = True
            return
        sb = is_semi_balanced(sub)
        if sb.ok:
            self.mode = "potential"
            self.pot = np.zeros(n, dtype=np.int64)
            for v, l in sb.potential.items():
                self.pot[v] = l
            upsets = []
            for mask in range(1, 2 ** len(support)):
                S = {support[i] for i in range(len(support)) if mask >> i & 1}
                if all(h in S for t, h in arcs if t in S):
                    row = np.zeros(n, dtype=np.int64)
                    row[list(S)] = 1
                    upsets.append(row)
            self.U = np.array(upsets, dtype=np.int64)
            self.ok = True

    def _lipschitz(self, support, arcs) -> np.ndarray:
        nbrs = {v: set() for v in support}
        for t, h in arcs:
            nbrs[t].add(h)
            nbrs[h].add(t)
        order = [support[0]]
        seen = {support[0]}
        for v in order:
            for w in sorted(nbrs[v]):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
        out = []

        def rec(i, f):
            if i == len(order):
                row = np.zeros(self.n, dtype=np.int64)
                for v, val in f.items():
                    row[v] = val
                out.append(row)
                return
            v = order[i]
            vals = [f[w] for w in nbrs[v] if w in f]
            for x in range(max(vals) - 1, min(vals) + 2):
                f[v] = x
                rec(i + 1, f)
                del f[v]

        rec(1, {order[0]: 0})
        return np.array(out, dtype=np.int64)

    def __call__(self, Z: np.ndarray, t: int) -> np.ndarray:
        off = [i for i in range(self.n) if i not in set(self.support)]
        ok = np.ones(Z.shape[0], dtype=bool)
        if off:
            ok &= ~np.any(Z[:, off] != 0, axis=1)
        if self.mode == "origin":
            return ok & ~np.any(Z != 0, axis=1)
        ok &= Z.sum(axis=1) == 0
        if self.mode == "symmetric":
            return ok & ((Z @ self.F.T).max(axis=1) <= t)
        val = Z @ self.pot
        ok &= (val <= t) & (val >= 0) if self.has_origin else (val == t)
        return ok & np.all(Z @ self.U.T >= 0, axis=1)


def _box(n: int, t: int, free: Sequence[int]) -> Iterable[np.ndarray]:
    """Integer points of [-t, t]^free (other coordinates 0) with zero sum, in chunks."""
    k = len(free)
    if k == 0:
        yield np.zeros((1, n), dtype=np.int64)
        return
    rng = np.arange(-t, t + 1, dtype=np.int64)
    inner = k - 2 if k >= 2 else 0
    inner_grid = (np.array(list(itertools.product(rng, repeat=inner)), dtype=np.int64).reshape(-1, inner)
                  if inner else np.zeros((1, 0), dtype=np.int64))
    heads = [()] if k < 2 else [(a,) for a in rng]
    for head in heads:
        rows = inner_grid.shape[0]
        part = np.concatenate([np.full((rows, len(head)), head, dtype=np.int64).reshape(rows, len(head)),
                               inner_grid], axis=1)
        last = -part.sum(axis=1)
        keep = np.abs(last) <= t
        part = np.concatenate([part[keep], last[keep][:, None]], axis=1)
        Z = np.zeros((part.shape[0], n), dtype=np.int64)
        Z[:, list(free)] = part
        yield Z


def lattice_points_array(vertices: Sequence[Point], t: int) -> np.ndarray:
    """All integer points of ``t * conv(vertices)`` as rows, in lexicographic order."""
    if t < 0:
        raise GeometryError("dilation must be non-negative")
    vertices = [tuple(int(a) for a in v) for v in vertices]
    n = len(vertices[0])
    if any(sum(v) != 0 for v in vertices):
        raise GeometryError("lattice enumeration assumes points in the zero-sum hyperplane")
    free = [i for i in range(n) if any(v[i] for v in vertices)]
    member = _FlowMembership(vertices)
    chunks = []
    for Z in _box(n, t, free):
        if member.ok:
            chunks.append(Z[member(Z, t)])
        else:
            keep = [i for i, z in enumerate(Z.tolist()) if contains_point(vertices, z, t)]
            chunks.append(Z[keep])
    out = np.concatenate(chunks, axis=0) if chunks else np.zeros((0, n), dtype=np.int64)
    order = np.lexsort(out.T[::-1]) if len(out) else np.arange(0)
    return out[order]


def lattice_points(vertices: Sequence[Point], t: int) -> list[Point]:
    return [tuple(int(a) for a in row) for row in lattice_points_array(vertices, t)]


def count_lattice_points(vertices: Sequence[Point], t: int) -> int:
    return int(lattice_points_array(vertices, t).shape[0])


# interior disjointness ---------------------------------------------------


@dataclass(frozen=True)
class Separation:
    """Why two simplices are interior disjoint.

    ``kind`` is ``"cut"`` (the indicator of ``shore1`` is >= 0 on the first
    simplex and <= 0 on the second), ``"facets"`` (cone simplices over
    different facets) or ``"lp"`` (exact infeasibility, no explicit witness).
    """

    kind: str
    shore0: frozenset | None = None
    shore1: frozenset | None = None


def separating_cut(g: Digraph, ta: SpanningTree, tb: SpanningTree):
    """Cut with ``ta`` crossing only forward and ``tb`` only backward, or None.

    Both trees must live in a common semi-balanced subgraph. Tree edges of
    ``ta`` are taken forward, those of ``tb`` reversed and shared edges both
    ways; the simplices meet in their interiors iff every non-shared arc
    lies on a directed cycle. An arc that does not gives the cut: the
    vertices reachable from its head.
    """
    arcs = {v: set() for v in g.vertices}
    required = []
    for e in ta | tb:
        t, h = g.edges[e]
        if e in ta and e in tb:
            arcs[t].add(h)
            arcs[h].add(t)
        elif e in ta:
            arcs[t].add(h)
            required.append((t, h))
        else:
            arcs[h].add(t)
            required.append((h, t))
    for u, v in required:
        seen = {v}
        stack = [v]
        while stack:
            for w in arcs[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if u not in seen:
            shore1 = frozenset(seen)
            return frozenset(g.vertices) - shore1, shore1
    return None


def _check_cut(g: Digraph, ta, tb, shore1) -> bool:
    s1 = set(shore1)
    for e in ta:
        t, h = g.edges[e]
        if (t in s1) != (h in s1) and not (h in s1):
            return False
    for e in tb:
        t, h = g.edges[e]
        if (t in s1) != (h in s1) and not (t in s1):
            return False
    return True


def _lp_interiors_meet(sa: Simplex, sb: Simplex) -> bool:
    ka, kb = len(sa.points), len(sb.points)
    n = len(sa.points[0])
    # alpha = 1 + a, beta = 1 + b with a, b >= 0; homogeneity makes the scale irrelevant
    A = [[sa.points[i][r] for i in range(ka)] + [-sb.points[j][r] for j in range(kb)] for r in range(n)]
    A.append([1] * ka + [-1] * kb)
    rhs = [sum(p[r] for p in sb.points) - sum(p[r] for p in sa.points) for r in range(n)] + [kb - ka]
    return feasible_point(A, rhs) is not None


def interior_disjoint(sa: Simplex, sb: Simplex, g: Digraph | None = None, method: str = "auto"):
    """Return ``(disjoint, separation)`` for two simplices with a common affine hull.

    With ``method="auto"`` and tree provenance plus a graph, the cut
    criterion decides; otherwise (or with ``method="lp"``) an exact
    feasibility problem does.
    """
    d = sa.dim
    if sb.dim != d or affine_rank(list(sa.points) + list(sb.points)) != d or affine_rank(sa.points) != d:
        raise GeometryError("simplices are not full-dimensional in a common affine hull")
    if method == "auto" and g is not None and sa.tree is not None and sb.tree is not None \
            and sa.kind == sb.kind and sa.kind in ("tree", "cone"):
        union = g.subgraph(sa.tree | sb.tree)
        if is_semi_balanced(union).ok:
            sep = separating_cut(g, sa.tree, sb.tree)
            if sep is None:
                return False, None
            return True, Separation("cut", sep[0], sep[1])
        if sa.kind == "cone":
            # different facet potentials: the facets' relative interiors are disjoint
            return (not _lp_interiors_meet(sa, sb)), Separation("facets")
    if _lp_interiors_meet(sa, sb):
        return False, None
    sep = None
    if g is not None and sa.tree is not None and sb.tree is not None:
        sep = separating_cut(g, sa.tree, sb.tree)
        if sep is not None and _check_cut(g, sa.tree, sb.tree, sep[1]):
            return True, Separation("cut", sep[0], sep[1])
    return True, Separation("lp")
