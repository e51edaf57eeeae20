"""Graph container and deterministic constructors for every graph family used here.

Weight convention: ``weights[i, j]`` is the weight of the edge feeding vertex i
from vertex j, so column j collects the out-edges of vertex j. Undirected graphs
store exactly symmetric matrices. All randomness goes through numpy's seeded
PCG64 generator (``numpy.random.default_rng``), so every constructor is
reproducible from its argument list alone.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DegenerateData, DimensionError, InvalidSize
from .validation import check_adjacency

WEIGHT_MODELS = ("uniform01", "gaussian01")


@dataclass(frozen=True, eq=False)
class Graph:
    """Square weight matrix plus a directedness flag.

    Self-loops are allowed (diagonal entries). Instances are immutable: the
    weight matrix is copied and marked read-only, so graphs can be shared
    freely across threads.
    """

    weights: np.ndarray
    directed: bool
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        w = check_adjacency(self.weights).copy()
        if not self.directed and not np.array_equal(w, w.T):
            raise ValueError("an undirected graph requires an exactly symmetric weight matrix")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != w.shape[0]:
                raise DimensionError("labels length must equal the vertex count")
            object.__setattr__(self, "labels", labels)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "directed", bool(self.directed))

    @property
    def n(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True, eq=False)
class SpatialTable:
    """Per-vertex 2-D coordinates plus equal-length observation vectors."""

    coordinates: np.ndarray  # (n, 2)
    samples: np.ndarray      # (n, n_samples)
    ids: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        coords = np.asarray(self.coordinates, dtype=float)
        samples = np.asarray(self.samples, dtype=float)
        if coords.ndim != 2 or coords.shape[1] != 2:
            raise DimensionError("coordinates must have shape (n, 2)")
        if coords.shape[0] < 2:
            raise InvalidSize("a spatial table needs at least 2 vertices")
        if samples.ndim != 2 or samples.shape[0] != coords.shape[0]:
            raise DimensionError("samples must have one row per vertex")
        if not (np.all(np.isfinite(coords)) and np.all(np.isfinite(samples))):
            raise ValueError("spatial table contains non-finite values")
        if self.ids is None:
            ids = tuple(str(i + 1) for i in range(coords.shape[0]))
        else:
            ids = tuple(str(s) for s in self.ids)
            if len(ids) != coords.shape[0]:
                raise DimensionError("ids length must equal the vertex count")
        coords.setflags(write=False)
        samples.setflags(write=False)
        object.__setattr__(self, "coordinates", coords)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "ids", ids)

    @property
    def n(self) -> int:
        return self.coordinates.shape[0]

    @property
    def n_samples(self) -> int:
        return self.samples.shape[1]


def generate_directed_cycle(n: int) -> Graph:
    """Directed ring: vertex i feeds vertex i+1 (mod n) with weight 1."""
    if n < 2:
        raise InvalidSize("a cycle needs at least 2 vertices")
    w = np.zeros((n, n))
    src = np.arange(n)
    w[(src + 1) % n, src] = 1.0
    return Graph(w, directed=True)


def generate_dct_path(n: int) -> Graph:
    """Undirected unit-weight path with unit self-loops on both end vertices.

    The type-II cosine basis diagonalizes this adjacency, which makes the graph
    the reference grid for cosine-transform downsampling experiments.
    """
    if n < 2:
        raise InvalidSize("a path needs at least 2 vertices")
    w = np.zeros((n, n))
    idx = np.arange(n - 1)
    w[idx, idx + 1] = 1.0
    w[idx + 1, idx] = 1.0
    w[0, 0] = 1.0
    w[n - 1, n - 1] = 1.0
    return Graph(w, directed=False)


def generate_random(n: int, density: float, weight_model: str = "uniform01",
                    undirected: bool = True, seed=0) -> Graph:
    """Random weighted graph: each off-diagonal edge kept with probability ``density``.

    Kept weights are drawn U(0,1) or N(0,1) depending on ``weight_model``.
    Undirected outputs mirror the upper triangle. Deterministic for a fixed seed.
    """
    if n < 2:
        raise InvalidSize("a random graph needs at least 2 vertices")
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    if weight_model not in WEIGHT_MODELS:
        raise ValueError(f"weight_model must be one of {WEIGHT_MODELS}")
    rng = np.random.default_rng(seed)
    mask = rng.random((n, n)) < density
    if weight_model == "uniform01":
        w = rng.random((n, n))
    else:
        w = rng.standard_normal((n, n))
    a = np.where(mask, w, 0.0)
    np.fill_diagonal(a, 0.0)
    if undirected:
        iu = np.triu_indices(n, 1)
        a[(iu[1], iu[0])] = a[iu]
    return Graph(a, directed=not undirected)


def generate_bipartite(p: int, q: int, block=None, seed=None) -> Graph:
    """Undirected two-sided graph [[0, B], [B^T, 0]] with B of shape (p, q).

    When ``block`` is omitted, B is drawn U(0,1) from ``seed``.
    """
    if p < 1 or q < 1:
        raise InvalidSize("both sides need at least one vertex")
    if block is None:
        if seed is None:
            raise ValueError("either block or seed must be provided")
        block = np.random.default_rng(seed).random((p, q))
    b = np.asarray(block, dtype=float)
    if b.shape != (p, q):
        raise DimensionError(f"block must have shape ({p}, {q}), got {b.shape}")
    if not np.all(np.isfinite(b)):
        raise ValueError("block contains non-finite entries")
    w = np.zeros((p + q, p + q))
    w[:p, p:] = b
    w[p:, :p] = b.T
    return Graph(w, directed=False)


def correlation_graph(samples) -> Graph:
    """Pearson-correlation adjacency with zero diagonal and unit spectral radius.

    ``samples`` holds one observation vector per vertex, shape (n, n_samples).
    The correlation matrix gets its diagonal zeroed and is then divided by its
    largest-magnitude eigenvalue (magnitude ties resolve to the larger signed
    value), so the result can carry negative weights but always has spectral
    radius 1.
    """
    s = np.asarray(samples, dtype=float)
    if s.ndim != 2 or s.shape[0] < 2:
        raise DimensionError("samples must have shape (n >= 2, n_samples)")
    if s.shape[1] < 2:
        raise DegenerateData("need at least 2 observations per vertex")
    if np.any(s.std(axis=1) == 0):
        raise DegenerateData("a constant observation vector has no defined correlation")
    c = np.corrcoef(s)
    np.fill_diagonal(c, 0.0)
    c = (c + c.T) / 2.0  # keep exact symmetry despite fp rounding
    eig = np.linalg.eigvalsh(c)
    mags = np.abs(eig)
    lead = eig[mags >= mags.max() * (1 - 1e-12)].max()
    if lead == 0:
        raise DegenerateData("correlation matrix has an all-zero spectrum")
    return Graph(c / lead, directed=False)


def graph_from_correlation(table: SpatialTable) -> Graph:
    """Correlation graph of a spatial table; vertex labels carry over."""
    g = correlation_graph(table.samples)
    return Graph(g.weights, directed=False, labels=table.ids)


def graph_from_coordinates(table: SpatialTable, neighbors: int = 8) -> Graph:
    """k-nearest-neighbour Gaussian-kernel adjacency with unit-norm rows.

    Entry (i, j) is exp(-dist(i,j)^2 / d0^2) for j among the ``neighbors``
    nearest vertices to i, zero otherwise, with d0 the mean pairwise distance.
    Rows are then rescaled to unit Euclidean norm, which breaks symmetry, so
    the result is directed. Distance ties go to the lower vertex index.
    """
    if neighbors < 1:
        raise ValueError("neighbors must be positive")
    n = table.n
    if n < neighbors + 1:
        raise InvalidSize(f"need at least {neighbors + 1} vertices for {neighbors} neighbours")
    coords = table.coordinates
    diff = coords[:, None, :] - coords[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=-1))
    d0 = dist[np.triu_indices(n, 1)].mean()
    if d0 == 0:
        raise DegenerateData("all coordinates coincide, the distance scale is zero")
    w = np.zeros((n, n))
    for i in range(n):
        order = sorted((j for j in range(n) if j != i), key=lambda j: (dist[i, j], j))
        for j in order[:neighbors]:
            w[i, j] = np.exp(-dist[i, j] ** 2 / d0 ** 2)
    w /= np.linalg.norm(w, axis=1, keepdims=True)
    return Graph(w, directed=True, labels=table.ids)


def kronecker_graph(g1: Graph, g2: Graph) -> Graph:
    """Graph on n1*n2 vertices whose weights are the Kronecker product of the factors."""
    w = np.kron(g1.weights, g2.weights)
    return Graph(w, directed=g1.directed or g2.directed)
