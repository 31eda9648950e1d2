import numpy as np
import pytest

from graphonlab import Graph, gen_random


def random_graph(rng: np.random.Generator, max_vertices: int = 8) -> Graph:
    """Random graph with at least one edge (densities need edges to be interesting)."""
    v = int(rng.integers(2, max_vertices + 1))
    pairs = [(i, j) for i in range(v) for j in range(i + 1, v)]
    p = float(rng.uniform(0.3, 0.9))
    edges = [pair for pair in pairs if rng.random() < p]
    if not edges:
        edges = [pairs[int(rng.integers(len(pairs)))]]
    return Graph(v, edges)


def random_graphon(rng: np.random.Generator, max_blocks: int = 5, dirichlet: bool = False):
    n = int(rng.integers(1, max_blocks + 1))
    return gen_random(n, int(rng.integers(0, 2**31)), dirichlet_measures=dirichlet)


@pytest.fixture
def rng():
    return np.random.default_rng(20240816)
