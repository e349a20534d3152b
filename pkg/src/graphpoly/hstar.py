"""Three routes to the h*-polynomial, plus the counterexample report.

* activity statistics on a dissecting tree set (away edges, semi-passivity),
* visible-facet counts from a generic reference point,
* Ehrhart interpolation from lattice-point counts (independent of any tree set).
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from . import figures
from .geometry import (Point, Simplex, affine_rank, cone_simplex, contains_point,
                       count_lattice_points, edge_vector, root_vertices, tree_simplex,
                       visible_facets)
from .graphs import Digraph, GraphError, away_count, is_semi_balanced, tree_cuts
from .ribbon import (EdgeOrder, basepoint_passivity, embedding_semi_passivity,
                     internal_semi_passivity)


class InconsistencyError(ArithmeticError):
    """An h*-vector came out negative or non-integral."""


@dataclass(frozen=True)
class HStarPolynomial:
    coefficients: tuple

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        for c in coeffs:
            if Fraction(c).denominator != 1 or c < 0:
                raise InconsistencyError(f"h* coefficient {c} is not a non-negative integer")
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    @classmethod
    def from_distribution(cls, values: Iterable[int]) -> "HStarPolynomial":
        cnt = Counter(values)
        if not cnt:
            return cls((0,))
        return cls(tuple(cnt.get(i, 0) for i in range(max(cnt) + 1)))

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i] if i < len(self.coefficients) else 0

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def total(self) -> int:
        return sum(self.coefficients)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class EhrhartPolynomial:
    """Ehrhart polynomial in both the binomial and the power basis."""

    dim: int
    counts: tuple  # lattice points of t*P for t = 0..dim
    binomial: tuple  # a_k with eps(t) = sum a_k binom(t + d - k, d)
    power: tuple = field(default=())  # Fraction coefficients of t^0..t^d

    def __call__(self, t: int) -> int:
        d = self.dim
        return sum(a * comb(t + d - k, d) for k, a in enumerate(self.binomial) if t + d - k >= 0)

    def normalized_volume(self) -> int:
        return sum(self.binomial)


def _binomial_poly(shift: int, d: int) -> list[Fraction]:
    """Power-basis coefficients of t -> binom(t + shift, d)."""
    poly = [Fraction(1)]
    for j in range(d):
        # multiply by (t + shift - j) / (j + 1)
        c = Fraction(shift - j, j + 1)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, a in enumerate(poly):
            nxt[i] += a * c
            nxt[i + 1] += a / (j + 1)
        poly = nxt
    return poly


def ehrhart_hstar(vertices: Sequence[Point]) -> tuple[EhrhartPolynomial, HStarPolynomial]:
    """Interpolate the Ehrhart polynomial from the counts at t = 0..d."""
    d = affine_rank(list(vertices))
    counts = [count_lattice_points(vertices, t) for t in range(d + 1)]
    a: list[int] = []
    for t in range(d + 1):
        a.append(counts[t] - sum(a[k] * comb(t + d - k, d) for k in range(t)))
    power = [Fraction(0)] * (d + 1)
    for k, ak in enumerate(a):
        for i, c in enumerate(_binomial_poly(d - k, d)):
            power[i] += ak * c
    ehr = EhrhartPolynomial(d, tuple(counts), tuple(a), tuple(power))
    return ehr, HStarPolynomial(tuple(a))


def polytope_vertices(g: Digraph, target: str) -> list[Point]:
    verts = root_vertices(g)
    return verts + [(0,) * g.n] if target == "symmetric" else verts


def simplices(g: Digraph, trees: Iterable, target: str) -> list[Simplex]:
    make = cone_simplex if target == "symmetric" else tree_simplex
    return [make(g, t) for t in trees]


# reference points --------------------------------------------------------


def q_basepoint(g: Digraph, v) -> tuple:
    """Point with a single positive coordinate at ``v``, shrunk into the interior.

    Starting from scale ``1/(n m)`` the point is halved until twice it still
    lies in the polytope; then it is interior because the origin is.
    """
    n, m = g.n, g.m
    if v not in g.vertices:
        raise GraphError(f"unknown vertex {v!r}")
    verts = root_vertices(g)
    c = Fraction(1, n * m)
    while True:
        q = tuple((n - 1) * c if u == v else -c for u in g.vertices)
        if contains_point(verts, tuple(2 * a for a in q), 1):
            return q
        c /= 2


def q_order(g: Digraph, order: EdgeOrder) -> tuple:
    """Convex combination of edge vectors with weights proportional to 2^rank."""
    total = sum(2 ** r for r in order.rank.values())
    q = [Fraction(0)] * g.n
    for e, r in order.rank.items():
        w = Fraction(2 ** r, total)
        for i, a in enumerate(edge_vector(g, e)):
            if a:
                q[i] += w * a
    return tuple(q)


# the three pipelines -----------------------------------------------------


def _warn_unverified(ts) -> None:
    if not getattr(ts, "verified", False):
        warnings.warn("tree set has not been verified as a dissection", stacklevel=3)


def _trees(ts):
    return ts.trees if hasattr(ts, "trees") else list(ts)


def away_distribution(g: Digraph, trees, v) -> list[int]:
    return [away_count(g, t, v) for t in trees]


def hstar_away(g: Digraph, ts, v) -> HStarPolynomial:
    """Generating function of the number of tree edges pointing away from ``v``."""
    _warn_unverified(ts)
    if v not in g.vertices:
        raise GraphError(f"unknown vertex {v!r}")
    return HStarPolynomial.from_distribution(away_distribution(g, _trees(ts), v))


def passivity_distribution(g: Digraph, trees, order: EdgeOrder, cuts=None) -> list[int]:
    cuts = cuts or [tree_cuts(g, t) for t in trees]
    return [internal_semi_passivity(g, t, order, c)[0] for t, c in zip(trees, cuts)]


def hstar_passivity(g: Digraph, ts, order: EdgeOrder, cuts=None) -> HStarPolynomial:
    """Generating function of internal semi-passivity with respect to ``order``."""
    if not g.is_bidirected and not is_semi_balanced(g).ok:
        raise GraphError("semi-passivity gives h* only for bidirected or semi-balanced digraphs")
    _warn_unverified(ts)
    return HStarPolynomial.from_distribution(passivity_distribution(g, _trees(ts), order, cuts))


def visibility_distribution(simps: Sequence[Simplex], q) -> list[int]:
    return [len(visible_facets(s, q)) for s in simps]


def hstar_visibility(simps: Sequence[Simplex], q) -> HStarPolynomial:
    """Count simplices by how many of their facets are visible from ``q``."""
    return HStarPolynomial.from_distribution(visibility_distribution(simps, q))


# cross-validation --------------------------------------------------------


@dataclass
class CrossCheck:
    results: dict  # method label -> HStarPolynomial
    oracle: EhrhartPolynomial | None = None

    @property
    def agree(self) -> bool:
        vals = {r.coefficients for r in self.results.values()}
        return len(vals) == 1

    @property
    def value(self) -> HStarPolynomial:
        return next(iter(self.results.values()))


def cross_validate(g: Digraph, ts, target: str, base=None, order: EdgeOrder | None = None,
                   methods: Sequence[str] = ("away", "passivity", "visibility", "ehrhart")) -> CrossCheck:
    trees = _trees(ts)
    base = g.vertices[0] if base is None else base
    order = order or EdgeOrder.labels(g)
    res, oracle = {}, None
    if "away" in methods and target == "symmetric":
        res[f"away[v={base}]"] = hstar_away(g, ts, base)
    if "passivity" in methods:
        res["passivity"] = hstar_passivity(g, ts, order)
    if "visibility" in methods:
        simps = simplices(g, trees, target)
        if target == "symmetric":
            res[f"visibility[q=basepoint({base})]"] = hstar_visibility(simps, q_basepoint(g, base))
        res["visibility[q=order]"] = hstar_visibility(simps, q_order(g, order))
    if "ehrhart" in methods:
        oracle, h = ehrhart_hstar(polytope_vertices(g, target))
        res["ehrhart"] = h
    return CrossCheck(res, oracle)


# counterexamples ---------------------------------------------------------


@dataclass
class NegativeFinding:
    name: str
    statistic: str
    values: list
    distribution: dict
    hstar: HStarPolynomial
    mismatch: bool
    detail: str


def negative_suite() -> list[NegativeFinding]:
    """Reproduce the two failures of embedding-based statistics on general dissections."""
    out = []

    g, ribbon, v0, e0 = figures.fig3()
    trees = figures.fig3_trees()
    _, h = ehrhart_hstar(root_vertices(g))
    base = [basepoint_passivity(g, t, v0) for t in trees]
    dist = dict(sorted(Counter(base).items()))
    out.append(NegativeFinding(
        "fig3-basepoint", "basepoint-passivity", base, dist, h,
        dist.get(0, 0) != h[0],
        f"{dist.get(0, 0)} trees have value 0 but h*_0 = {h[0]}"))

    emb = [embedding_semi_passivity(g, ribbon, v0, e0, t) for t in trees]
    poly = HStarPolynomial.from_distribution(emb)
    out.append(NegativeFinding(
        "fig3-embedding", "internal embedding semi-passivity", emb,
        dict(sorted(Counter(emb).items())), h, poly != h,
        f"generating function {poly} differs from h* = {h}"))

    g, ribbon, v0, e0 = figures.fig4()
    trees = figures.fig4_trees()
    _, h = ehrhart_hstar(root_vertices(g))
    emb = [embedding_semi_passivity(g, ribbon, v0, e0, t) for t in trees]
    top = max(emb)
    out.append(NegativeFinding(
        "fig4-embedding", "internal embedding semi-passivity", emb,
        dict(sorted(Counter(emb).items())), h, emb.count(2) != h[2],
        f"{emb.count(2)} trees have value 2 but h*_2 = {h[2]} (max value {top})"))
    return out
