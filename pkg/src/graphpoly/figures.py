"""Bundled example graphs (the triangle and the 2x3 grid digraph) and their tree sets."""

from __future__ import annotations

from importlib import resources

from .formats import parse_graph, parse_trees, ribbon_for


def data_path(name: str):
    return resources.files("graphpoly") / "data" / name


def load_graph(name: str):
    return parse_graph(data_path(name).read_text())


def load_trees(name: str) -> list[frozenset]:
    return parse_trees(data_path(name).read_text())


def k3():
    return load_graph("k3.dg")[0]


def k3_trees() -> list[frozenset]:
    return load_trees("k3.trees")


def grid():
    return load_graph("fig2.dg")[0]


def grid_trees() -> list[frozenset]:
    return load_trees("fig2.trees")


def fig3():
    """Grid digraph with its planar ribbon, base vertex lower left, base edge the bottom edge."""
    g, lists = load_graph("fig2.dg")
    return g, ribbon_for(g, lists), 5, 3


def fig3_trees() -> list[frozenset]:
    return load_trees("fig3.trees")


def fig4():
    """Triangle with its planar ribbon, base vertex lower right, base edge top -> lower right."""
    g, lists = load_graph("k3.dg")
    return g, ribbon_for(g, lists), 3, 4


def fig4_trees() -> list[frozenset]:
    return k3_trees()


# tour orders printed in the edge-ordering figure, as rank of edges 1..6
FIG4_ORDERS = [
    {1: 4, 2: 1, 5: 5, 6: 6, 4: 2, 3: 3},
    {1: 6, 2: 3, 5: 5, 6: 4, 4: 2, 3: 1},
    {1: 6, 2: 5, 5: 3, 6: 2, 4: 4, 3: 1},
    {1: 2, 2: 3, 5: 5, 6: 6, 4: 4, 3: 1},
    {1: 4, 2: 5, 5: 3, 6: 6, 4: 2, 3: 1},
    {1: 2, 2: 1, 5: 3, 6: 6, 4: 4, 3: 5},
]
