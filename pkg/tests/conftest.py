import random

import networkx as nx
import pytest

from graphpoly.graphs import Digraph


def bidirect(G: nx.Graph) -> Digraph:
    """Bidirected doubling of a networkx graph, vertices relabelled 1..n."""
    idx = {v: i + 1 for i, v in enumerate(sorted(G.nodes()))}
    return Digraph.from_undirected(tuple(range(1, len(idx) + 1)), [(idx[a], idx[b]) for a, b in G.edges()])


def small_connected_graphs(max_n=5):
    """Every connected simple graph on 2..max_n vertices, up to isomorphism."""
    return [G for G in nx.graph_atlas_g() if 2 <= G.number_of_nodes() <= max_n and nx.is_connected(G)]


def random_connected_graph(n: int, rng: random.Random) -> nx.Graph:
    while True:
        p = rng.uniform(0.3, 0.9)
        G = nx.gnp_random_graph(n, p, seed=rng.randrange(2**31))
        if nx.is_connected(G):
            return G


def potential_orientations(G: nx.Graph):
    """All orientations of G induced by integer potentials changing by one on every edge.

    Each orientation is returned once together with its reverse.
    """
    nodes = sorted(G.nodes())
    idx = {v: i + 1 for i, v in enumerate(nodes)}
    tree = list(nx.bfs_edges(G, nodes[0]))
    edges = list(G.edges())
    seen = set()
    out = []
    for signs in range(2 ** len(tree)):
        f = {nodes[0]: 0}
        for k, (u, v) in enumerate(tree):
            f[v] = f[u] + (1 if signs >> k & 1 else -1)
        if any(abs(f[a] - f[b]) != 1 for a, b in edges):
            continue
        arcs = tuple((i + 1, idx[a], idx[b]) if f[b] > f[a] else (i + 1, idx[b], idx[a])
                     for i, (a, b) in enumerate(edges))
        if arcs in seen:
            continue
        seen.add(arcs)
        out.append(Digraph.from_edges(tuple(range(1, len(nodes) + 1)), arcs))
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)
