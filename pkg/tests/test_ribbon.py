import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import bidirect, potential_orientations, random_connected_graph
from graphpoly import figures
from graphpoly.dissect import jaeger_trees
from graphpoly.graphs import Digraph, GraphError, spanning_trees
from graphpoly.ribbon import (EdgeOrder, RibbonStructure, basepoint_passivity, bernardi_tour,
                              embedding_semi_passivity, internal_semi_passivity, is_jaeger, tour_order)


def random_instance(seed):
    rng = random.Random(seed)
    g = bidirect(random_connected_graph(rng.randint(2, 5), rng))
    r = RibbonStructure.random(g, rng)
    v0 = rng.choice(g.vertices)
    e0 = rng.choice(g.incident(v0))
    t = rng.choice(spanning_trees(g))
    return rng, g, r, v0, e0, t


def test_triangle_rotation_from_drawing():
    g, r, _, _ = figures.fig4()
    # lower right vertex: towards the top vertex, then the lower left; incoming copy first
    assert r.rotation[3] == (4, 3, 5, 6)


def test_triangle_tour_orders_match_figure():
    g, r, v0, e0 = figures.fig4()
    for t, printed in zip(figures.fig4_trees(), figures.FIG4_ORDERS):
        assert tour_order(g, bernardi_tour(g, r, v0, e0, t)).rank == printed


def test_grid_jaeger_trees_match_figure():
    g, r, v0, e0 = figures.fig3()
    assert set(jaeger_trees(g, r, v0, e0)) == set(figures.grid_trees())


def test_triangle_semi_passivities_under_labels():
    g = figures.k3()
    order = EdgeOrder.labels(g)
    vals = [internal_semi_passivity(g, t, order)[0] for t in figures.k3_trees()]
    assert vals == [1, 1, 0, 2, 1, 1]


def test_panel_two_activity():
    g = figures.k3()
    _, flags = internal_semi_passivity(g, frozenset({4, 5}), EdgeOrder.labels(g))
    assert flags == {4: False, 5: True}


def test_grid_semi_passivities_under_labels():
    g = figures.grid()
    order = EdgeOrder.labels(g)
    assert [internal_semi_passivity(g, t, order)[0] for t in figures.grid_trees()] == [1, 0, 2, 1]


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_tour_visits_each_pair_once(seed):
    _, g, r, v0, e0, t = random_instance(seed)
    tour = bernardi_tour(g, r, v0, e0, t)
    pairs = {(v, e) for e, (a, b) in g.edges.items() for v in (a, b)}
    assert len(tour) == 2 * g.m
    assert set(tour) == pairs
    assert tour[0] == (v0, e0)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_tour_ignores_orientation(seed):
    _, g, r, v0, e0, t = random_instance(seed)
    flipped = Digraph(g.vertices, {e: (h, tl) for e, (tl, h) in g.edges.items()})
    assert bernardi_tour(g, r, v0, e0, t) == bernardi_tour(flipped, r, v0, e0, t)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_passive_plus_active_is_tree_size(seed):
    rng, g, _, _, _, t = random_instance(seed)
    count, flags = internal_semi_passivity(g, t, EdgeOrder.random(g, rng))
    assert set(flags) == set(t)
    assert count == sum(flags.values())
    assert count + sum(not f for f in flags.values()) == g.n - 1


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_jaeger_embedding_matches_basepoint(seed):
    rng = random.Random(seed)
    G = random_connected_graph(rng.randint(2, 5), rng)
    if not nx.is_bipartite(G):
        G = nx.bfs_tree(G, 0).to_undirected()
    g = rng.choice(potential_orientations(G))
    r = RibbonStructure.random(g, rng)
    v0 = rng.choice(g.vertices)
    e0 = rng.choice(g.incident(v0))
    for t in jaeger_trees(g, r, v0, e0):
        assert embedding_semi_passivity(g, r, v0, e0, t) == basepoint_passivity(g, t, v0)


def test_bad_base_edge():
    g, r, _, _ = figures.fig4()
    with pytest.raises(GraphError):
        bernardi_tour(g, r, 1, 3, frozenset({1, 3}))


def test_rotation_must_match_graph():
    g = figures.k3()
    with pytest.raises(GraphError):
        RibbonStructure.from_lists(g, {1: [1, 2, 5]})
    with pytest.raises(GraphError):
        RibbonStructure({1: (1, 1)})


def test_edge_order_roundtrip():
    order = EdgeOrder.from_sequence([3, 1, 2])
    assert order.sequence() == [3, 1, 2]
    assert order.max([3, 1]) == 1
    with pytest.raises(GraphError):
        EdgeOrder({1: 1, 2: 3})


def test_is_jaeger_needs_tail_first():
    g, r, v0, e0 = figures.fig3()
    outside = set(spanning_trees(g)) - set(figures.grid_trees())
    assert outside and not any(is_jaeger(g, r, v0, e0, t) for t in outside)
