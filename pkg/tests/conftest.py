import random

import pytest

from decaps.graph_core import DecrementalGraph

# Figure-style 6-node example used throughout: r=0, a=1, b=2, c=3, d=4, e=5.
FIG_EDGES = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 2), (2, 5), (3, 5), (4, 5)]
R, A, B, C, D, E = range(6)


@pytest.fixture
def fig_graph():
    return DecrementalGraph.from_edge_list(6, FIG_EDGES)


def random_graph(rng: random.Random, n: int, m: int) -> DecrementalGraph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    return DecrementalGraph.from_edge_list(n, sorted(pairs[:m]))


def random_graph_and_trace(rng: random.Random, n: int, m: int):
    g = random_graph(rng, n, min(m, n * (n - 1) // 2))
    order = g.edges()
    rng.shuffle(order)
    return g, order
