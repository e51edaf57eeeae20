import numpy as np
import pytest

from gftdown import Graph, generate_directed_cycle, gft

WHEEL_EDGES = [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
               (1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]

# edges bumped to 1.01 in the perturbed variant, 0-indexed
WHEEL_BUMPED = [(0, 2), (0, 3), (0, 4), (1, 2), (4, 5)]


def wheel_weights(perturbed=False):
    """Six-vertex wheel: hub 0 joined to the 5-ring 1-2-3-4-5, ten unit edges."""
    w = np.zeros((6, 6))
    for i, j in WHEEL_EDGES:
        w[i, j] = w[j, i] = 1.0
    if perturbed:
        for i, j in WHEEL_BUMPED:
            w[i, j] = w[j, i] = 1.01
    return w


@pytest.fixture
def wheel():
    return Graph(wheel_weights(), directed=False)


@pytest.fixture
def perturbed_wheel():
    return Graph(wheel_weights(perturbed=True), directed=False)


@pytest.fixture
def dft6():
    return generate_directed_cycle(6)


@pytest.fixture
def dft6_basis(dft6):
    return gft(dft6, "adjacency")


@pytest.fixture
def two_disjoint_edges():
    """Two identical disconnected edges; purging both endpoints of the first
    edge makes the high/purged block singular."""
    w = np.zeros((4, 4))
    w[0, 1] = w[1, 0] = 1.0
    w[2, 3] = w[3, 2] = 1.0
    return Graph(w, directed=False)
