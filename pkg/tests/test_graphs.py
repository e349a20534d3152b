import random

import networkx as nx
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import bidirect, potential_orientations, random_connected_graph
from graphpoly import figures
from graphpoly.graphs import (Digraph, GraphError, away_count, fundamental_cut, is_semi_balanced,
                              is_spanning_tree, iter_spanning_trees, spanning_trees, tree_cuts)


def matrix_tree_count(g: Digraph) -> int:
    """Spanning trees of the underlying multigraph, by Kirchhoff's theorem."""
    idx = {v: i for i, v in enumerate(g.vertices)}
    L = sympy.zeros(g.n, g.n)
    for a, b in g.edges.values():
        i, j = idx[a], idx[b]
        L[i, i] += 1
        L[j, j] += 1
        L[i, j] -= 1
        L[j, i] -= 1
    return int(L[1:, 1:].det()) if g.n > 1 else 1


def test_doubling_ids():
    g = Digraph.from_undirected((1, 2, 3), [(1, 2), (2, 3)])
    assert g.edges == {1: (1, 2), 2: (2, 1), 3: (2, 3), 4: (3, 2)}
    assert g.pairing == {1: 2, 2: 1, 3: 4, 4: 3}
    assert g.is_bidirected


def test_pairing_detected_from_directed_lines():
    g = figures.k3()
    assert g.is_bidirected
    assert g.pairing[1] == 2 and g.pairing[3] == 4 and g.pairing[5] == 6
    assert not figures.grid().is_bidirected


@pytest.mark.parametrize("verts, edges", [
    ((1, 1), [(1, 1, 2)]),
    ((1, 2), [(1, 1, 1)]),
    ((1, 2), [(0, 1, 2)]),
    ((1, 2), [(1, 1, 3)]),
    ((1, 2), [(1, 1, 2), (1, 2, 1)]),
])
def test_invalid_digraphs(verts, edges):
    with pytest.raises(GraphError):
        Digraph.from_edges(verts, edges)


def test_bad_pairing():
    with pytest.raises(GraphError):
        Digraph((1, 2), {1: (1, 2), 2: (1, 2)}, {1: 2, 2: 1})


def test_semi_balanced_examples():
    sb = is_semi_balanced(figures.grid())
    assert sb.ok
    g = figures.grid()
    for t, h in g.edges.values():
        assert sb.potential[h] == sb.potential[t] + 1
    k3 = is_semi_balanced(figures.k3())
    assert not k3.ok and k3.potential is None


def test_unbalanced_cycle_witness():
    g = Digraph.from_edges((1, 2, 3), [(1, 1, 2), (2, 2, 3), (3, 3, 1)])
    res = is_semi_balanced(g)
    assert not res.ok
    assert sorted(res.cycle) == [1, 2, 3]


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_potential_orientations_are_semi_balanced(seed):
    rng = random.Random(seed)
    G = nx.random_labeled_tree(rng.randint(2, 6), seed=seed)
    for g in potential_orientations(G):
        assert is_semi_balanced(g).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_odd_cycle_orientations_never_balance(seed):
    rng = random.Random(seed)
    n = rng.choice([3, 5])
    arcs = []
    for i in range(1, n + 1):
        a, b = i, i % n + 1
        arcs.append((i, a, b) if rng.random() < 0.5 else (i, b, a))
    g = Digraph.from_edges(range(1, n + 1), arcs)
    res = is_semi_balanced(g)
    assert not res.ok
    # the witness is a closed walk with unequal counts in the two directions
    assert len(res.cycle) >= 3


@pytest.mark.parametrize("make, count", [
    (figures.k3, 12),
    (figures.grid, 15),
])
def test_tree_counts_known(make, count):
    g = make()
    assert len(spanning_trees(g)) == count == matrix_tree_count(g)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_tree_count_matches_kirchhoff(seed):
    rng = random.Random(seed)
    g = bidirect(random_connected_graph(rng.randint(2, 5), rng))
    trees = spanning_trees(g)
    assert len(trees) == len(set(trees)) == matrix_tree_count(g)
    assert all(is_spanning_tree(g, t) for t in trees)
    keys = [sorted(t) for t in trees]
    assert keys == sorted(keys)


def test_disconnected_graph_rejected():
    g = Digraph.from_edges((1, 2, 3), [(1, 1, 2)])
    with pytest.raises(GraphError):
        list(iter_spanning_trees(g))
    with pytest.raises(GraphError):
        spanning_trees(g)


def test_fundamental_cut_of_triangle_panel():
    g = figures.k3()
    c = fundamental_cut(g, frozenset({4, 5}), 4)
    assert c.cut_edges == {1, 2, 3, 4}
    assert c.parallel == {2, 4}
    assert c.opposite == {1, 3}
    assert not c.is_directed


def test_cut_shores_partition():
    g = figures.grid()
    for t in spanning_trees(g):
        for e, c in tree_cuts(g, t).items():
            assert c.shore0 | c.shore1 == set(g.vertices)
            assert not c.shore0 & c.shore1
            assert g.tail(e) in c.shore0 and g.head(e) in c.shore1
            assert e in c.parallel
            assert c.cut_edges & t == {e}


def test_away_count_bounds():
    g = figures.k3()
    for t in spanning_trees(g):
        for v in g.vertices:
            assert 0 <= away_count(g, t, v) <= g.n - 1
    with pytest.raises(GraphError):
        away_count(g, frozenset({1, 3}), 9)
