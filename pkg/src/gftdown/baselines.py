"""Comparator downsamplers (spanning-tree and eigenvector-polarity) and the
edge-cut ratio they are usually judged by.

Both baselines reduce the graph to a structure with a natural two-colouring
and then balance the classes to exactly n//2 purged vertices; the balancing
and tie-break rules here are deterministic conventions, not canon.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .downsampling import Partition
from .errors import (ComplexPolarityWarning, DegenerateGraph, DimensionError,
                     UnsupportedGraph)
from .graphs import Graph
from .spectral import SpectralBasis


@dataclass(frozen=True)
class CutReport:
    """Crossing weight, total weight, and their ratio for one partition."""

    cut_weight: float
    total_weight: float
    cut_index: float


def cut_index(graph: Graph, partition: Partition) -> CutReport:
    """Weight crossing the partition divided by the total edge weight.

    Undirected edges count once; directed graphs sum both orientations.
    Self-loops never cross but do count toward the total.
    """
    n = graph.n
    if partition.n != n:
        raise DimensionError(f"partition covers {partition.n} vertices, graph has {n}")
    w = graph.weights
    in_kept = np.zeros(n, dtype=bool)
    in_kept[partition.kept] = True
    cross = in_kept[:, None] != in_kept[None, :]
    if graph.directed:
        total = float(w.sum())
        cut = float(w[cross].sum())
    else:
        iu = np.triu_indices(n)
        total = float(w[iu].sum())
        cut = float(w[iu][cross[iu]].sum())
    if total == 0:
        raise DegenerateGraph("graph has zero total edge weight")
    return CutReport(cut_weight=cut, total_weight=total, cut_index=cut / total)


class _DisjointSet:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _maximum_spanning_forest(w):
    """Kruskal on descending signed weight; ties by (lower, higher) endpoint."""
    n = w.shape[0]
    edges = [(i, j, w[i, j]) for i in range(n) for j in range(i + 1, n) if w[i, j] != 0]
    edges.sort(key=lambda e: (-e[2], e[0], e[1]))
    dsu = _DisjointSet(n)
    adjacency = [[] for _ in range(n)]
    for i, j, _ in edges:
        if dsu.union(i, j):
            adjacency[i].append(j)
            adjacency[j].append(i)
    return adjacency


def _balance(kept, purged, priority, n):
    """Move lowest-priority vertices across until |purged| == n//2."""
    want = n // 2
    while len(purged) > want:
        move = min(purged, key=priority)
        purged.remove(move)
        kept.add(move)
    while len(purged) < want:
        move = min(kept, key=priority)
        kept.remove(move)
        purged.add(move)
    return Partition(np.array(sorted(kept)), np.array(sorted(purged)))


def mst_downsample(graph: Graph) -> Partition:
    """Two-colour a maximum-weight spanning forest, then balance the classes.

    Every tree is bipartite, so the colouring always exists; disconnected
    graphs are coloured per component. Kept starts as the colour class of
    vertex 0 and the classes are balanced to exactly n//2 purged vertices by
    moving lowest-tree-degree vertices across (ties to the lower index).
    """
    if graph.directed:
        raise UnsupportedGraph("spanning-tree downsampling expects an undirected graph")
    n = graph.n
    adjacency = _maximum_spanning_forest(graph.weights)
    color = np.full(n, -1, dtype=int)
    for root in range(n):
        if color[root] != -1:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adjacency[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    stack.append(v)
    kept = {i for i in range(n) if color[i] == color[0]}
    purged = set(range(n)) - kept
    degree = [len(adjacency[i]) for i in range(n)]
    return _balance(kept, purged, lambda i: (degree[i], i), n)


def polarity_downsample(basis: SpectralBasis) -> Partition:
    """Split on the sign of the highest-frequency eigenvector, then balance.

    A genuinely complex eigenvector has no sign; in that case the split falls
    back to the sign of the real parts and ComplexPolarityWarning is emitted.
    Kept is the class containing the largest-magnitude entry, and balancing
    moves smallest-magnitude entries across first (ties to the lower index).
    """
    n = basis.n
    v = np.asarray(basis.F_inv[:, -1])
    if np.linalg.norm(v.imag) > 1e-9 * np.linalg.norm(v):
        warnings.warn("highest-frequency eigenvector is complex; splitting on real parts",
                      ComplexPolarityWarning, stacklevel=2)
    signs = v.real > 0
    magnitude = np.abs(v)
    anchor = int(np.argmax(magnitude))
    kept = set(np.flatnonzero(signs == signs[anchor]).tolist())
    purged = set(range(n)) - kept
    return _balance(kept, purged, lambda i: (magnitude[i], i), n)
