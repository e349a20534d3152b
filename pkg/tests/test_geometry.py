import itertools
import random
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from conftest import bidirect, potential_orientations, random_connected_graph
from graphpoly import figures
from graphpoly.dissect import facets
from graphpoly.geometry import (BarycentricMap, GeometryError, NonGenericPointError, Simplex, _FlowMembership,
                                _lp_interiors_meet, barycentric, cone_simplex, contains_point,
                                count_lattice_points, cut_functional, interior_disjoint, is_unimodular,
                                lattice_points, lattice_points_array, root_vertices, separating_cut,
                                smith_invariants, tree_simplex, visible_facets)
from graphpoly.graphs import spanning_trees
from graphpoly.hstar import polytope_vertices

int_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(int_matrices)
def test_smith_invariants_match_sympy(M):
    D = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    want = [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]
    assert smith_invariants(M) == want


def test_unimodularity_examples():
    assert is_unimodular(Simplex(((0, 0), (1, 0), (0, 1))))
    assert not is_unimodular(Simplex(((0, 0), (2, 0), (0, 1))))
    assert not is_unimodular(Simplex(((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1))))
    with pytest.raises(GeometryError):
        is_unimodular(Simplex(((0, 0), (Fraction(1, 2), 0))))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_tree_and_cone_simplices_unimodular(seed):
    rng = random.Random(seed)
    g = bidirect(random_connected_graph(rng.randint(2, 5), rng))
    for t in rng.sample(spanning_trees(g), 5) if len(spanning_trees(g)) > 5 else spanning_trees(g):
        assert is_unimodular(tree_simplex(g, t))
        assert is_unimodular(cone_simplex(g, t))


def test_lattice_counts_of_triangle_hexagon():
    verts = polytope_vertices(figures.k3(), "symmetric")
    assert [count_lattice_points(verts, t) for t in range(4)] == [1, 7, 19, 37]


def test_lattice_points_sorted_and_in_hyperplane():
    pts = lattice_points(root_vertices(figures.grid()), 2)
    assert pts == sorted(pts)
    assert all(sum(p) == 0 for p in pts)
    assert len(pts) == len(set(pts)) == 26


def brute_count(vertices, t):
    """Lattice points of t*P by exact LP over the whole sum-zero box."""
    n = len(vertices[0])
    free = [i for i in range(n) if any(v[i] for v in vertices)]
    count = 0
    for xs in itertools.product(range(-t, t + 1), repeat=len(free) - 1):
        last = -sum(xs)
        if abs(last) > t:
            continue
        z = [0] * n
        for i, x in zip(free, list(xs) + [last]):
            z[i] = x
        count += contains_point(vertices, z, t)
    return count


@pytest.mark.parametrize("make, target", [(figures.k3, "symmetric"), (figures.grid, "root")])
def test_fast_counts_match_brute_force(make, target):
    verts = polytope_vertices(make(), target)
    for t in range(3):
        assert count_lattice_points(verts, t) == brute_count(verts, t)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_flow_membership_matches_lp(seed):
    rng = random.Random(seed)
    G = random_connected_graph(rng.randint(2, 5), rng)
    if rng.random() < 0.5:
        verts = polytope_vertices(bidirect(G), "symmetric")
    else:
        if not nx.is_bipartite(G):
            G = nx.minimum_spanning_tree(G)
        verts = root_vertices(rng.choice(potential_orientations(G)))
    member = _FlowMembership(verts)
    assert member.ok
    n = len(verts[0])
    t = rng.randint(0, 3)
    rows = []
    for _ in range(40):
        z = [rng.randint(-t - 1, t + 1) for _ in range(n - 1)]
        rows.append(z + [-sum(z)])
    Z = np.array(rows, dtype=np.int64)
    fast = member(Z, t)
    for z, ok in zip(rows, fast):
        assert bool(ok) == contains_point(verts, z, t)


def test_barycentric_and_visibility():
    g = figures.k3()
    s = cone_simplex(g, frozenset({4, 5}))
    q = (Fraction(1, 10), Fraction(-1, 20), Fraction(-1, 20))
    lam = barycentric(s, q)
    assert sum(lam) == 1
    point = tuple(sum(l * p[i] for l, p in zip(lam, s.points)) for i in range(3))
    assert point == q
    vis = visible_facets(s, q)
    assert vis == {i for i, l in enumerate(lam) if l < 0}


def test_non_generic_point_rejected():
    g = figures.k3()
    s = cone_simplex(g, frozenset({4, 5}))
    with pytest.raises(NonGenericPointError):
        visible_facets(s, (0, 0, 0))


def test_barycentric_map_matches_exact():
    g = figures.grid()
    s = tree_simplex(g, figures.grid_trees()[0])
    bm = BarycentricMap(s)
    Z = lattice_points_array(root_vertices(g), 2)
    scaled = bm.scaled(Z, 2)
    for z, row in zip(Z.tolist(), scaled.tolist()):
        lam = barycentric(s, [Fraction(a, 2) for a in z])
        assert [Fraction(x, bm.den) for x in row] == [2 * x for x in lam]


def test_cut_functional_on_grid_certificate():
    g = figures.grid()
    t1, t2 = figures.fig3_trees()[:2]
    shore0, shore1 = separating_cut(g, t1, t2)
    f = cut_functional(g, shore1)
    assert all(f(p) >= 0 for p in tree_simplex(g, t1).points)
    assert all(f(p) <= 0 for p in tree_simplex(g, t2).points)


def test_overlapping_trees_detected():
    g = figures.grid()
    t1 = figures.fig3_trees()[0]
    bad = frozenset({2, 3, 4, 5, 6})
    assert separating_cut(g, t1, bad) is None
    ok, sep = interior_disjoint(tree_simplex(g, t1), tree_simplex(g, bad), g)
    assert not ok and sep is None
    assert _lp_interiors_meet(tree_simplex(g, t1), tree_simplex(g, bad))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_cut_criterion_matches_lp(seed):
    rng = random.Random(seed)
    g = bidirect(random_connected_graph(rng.randint(3, 5), rng))
    fc = rng.choice(facets(g))
    sub = fc.digraph(g)
    trees = spanning_trees(sub)
    for _ in range(8):
        ta, tb = rng.choice(trees), rng.choice(trees)
        if ta == tb:
            continue
        for make in (tree_simplex, cone_simplex):
            sa, sb = make(g, ta), make(g, tb)
            comb, sep = interior_disjoint(sa, sb, g)
            lp, _ = interior_disjoint(sa, sb, method="lp")
            assert comb == lp
            if comb:
                f = cut_functional(g, sep.shore1)
                assert all(f(p) >= 0 for p in sa.points) and all(f(p) <= 0 for p in sb.points)


def test_mismatched_dimensions_rejected():
    g = figures.k3()
    with pytest.raises(GeometryError):
        interior_disjoint(tree_simplex(g, frozenset({4, 5})), cone_simplex(g, frozenset({4, 5})))
