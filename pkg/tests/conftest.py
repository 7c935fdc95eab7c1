import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from vcalp.graph import (
    Graph,
    complete,
    cycle,
    heawood,
    hypercube,
    mcgee,
    petersen,
    star,
)


def gnp(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
    return Graph.from_edges(edges, range(1, n + 1))


def from_nx(G) -> Graph:
    return Graph.from_edges([(u + 1, w + 1) for u, w in G.edges()], [v + 1 for v in G.nodes()])


def random_cubic(rng: random.Random, n: int) -> Graph:
    return from_nx(nx.random_regular_graph(3, n, seed=rng.randrange(2**31)))


def named_graphs() -> dict:
    return {
        "C4": cycle(4), "C5": cycle(5), "C6": cycle(6), "C7": cycle(7),
        "K4": complete(4), "K5": complete(5), "K1,3": star(3), "Q3": hypercube(3),
        "Petersen": petersen(), "Heawood": heawood(), "McGee": mcgee(),
    }


# exact vc of the named graphs that are too large for the brute-force oracle,
# via a maximum clique of the complement
def vc_by_clique(g: Graph) -> int:
    comp = nx.complement(nx.Graph(g.edges()))
    comp.add_nodes_from(g.vertices())
    _, weight = nx.max_weight_clique(comp, weight=None)
    return g.n - weight


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(chosen, range(1, n + 1))


@pytest.fixture
def rng():
    return random.Random(20240611)
