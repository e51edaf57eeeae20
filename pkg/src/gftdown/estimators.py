"""Scikit-learn style wrapper so graph downsampling composes with pipelines."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import baselines, downsampling, graphs, spectral
from .errors import NotReconstructible
from .validation import check_signal_matrix

METHODS = ("greedy", "exhaustive", "mst", "polarity")


class GraphDownsampler(BaseEstimator, TransformerMixin):
    """Downsample graph signals onto a learned half-size vertex set.

    ``fit`` picks the kept vertices for the graph, ``transform`` restricts
    signals to them, and ``inverse_transform`` fills the purged vertices back
    in through the reconstruction map (exact for bandlimited signals).

    Parameters
    ----------
    adjacency : array-like of shape (n_vertices, n_vertices) or Graph, optional
        Weight matrix of the graph the signals live on. When omitted, ``fit``
        infers a correlation graph from the training signals, the usual way a
        sensor-network graph is built from observed data.
    directed : bool, optional
        Directedness of ``adjacency``. Inferred from symmetry when None.
        Ignored when ``adjacency`` is already a Graph.
    method : {"greedy", "exhaustive", "mst", "polarity"}, default="greedy"
        Strategy used to pick the kept vertex set.
    variant : {"adjacency", "laplacian", "normalized_laplacian"}, default="adjacency"
        Which graph Fourier transform drives the quality score.
    max_exhaustive_n : int, default=16
        Size gate for ``method="exhaustive"``.

    Attributes
    ----------
    graph_ : Graph used during fit.
    basis_ : SpectralBasis of the graph.
    partition_ : learned kept/purged split.
    operator_ : DownsampleOperator for the split.
    sdqm_ : float, quality score of the split.
    n_features_in_ : int, number of vertices.

    Examples
    --------
    >>> from gftdown import GraphDownsampler, generate_dct_path
    >>> g = generate_dct_path(8)
    >>> down = GraphDownsampler(adjacency=g).fit()
    >>> down.transform(np.ones(8)).shape
    (4,)
    """

    def __init__(self, adjacency=None, directed=None, method="greedy",
                 variant="adjacency", max_exhaustive_n=16):
        self.adjacency = adjacency
        self.directed = directed
        self.method = method
        self.variant = variant
        self.max_exhaustive_n = max_exhaustive_n

    def fit(self, X=None, y=None):
        """Learn the kept vertex set from the adjacency or, failing that, from X."""
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        graph = self._resolve_graph(X)
        basis = spectral.gft(graph, self.variant)
        if self.method == "greedy":
            partition, operator = downsampling.greedy_downsample(basis)
        elif self.method == "exhaustive":
            result = downsampling.exhaustive_downsample(basis, self.max_exhaustive_n)
            partition, operator = result.partition, result.operator
        elif self.method == "mst":
            partition = baselines.mst_downsample(graph)
            operator = downsampling.partition_blocks(basis, partition)
        else:
            partition = baselines.polarity_downsample(basis)
            operator = downsampling.partition_blocks(basis, partition)
        self.graph_ = graph
        self.basis_ = basis
        self.partition_ = partition
        self.operator_ = operator
        self.sdqm_ = operator.sdqm
        self.n_features_in_ = graph.n
        return self

    def _resolve_graph(self, X):
        if self.adjacency is not None:
            if isinstance(self.adjacency, graphs.Graph):
                return self.adjacency
            weights = np.asarray(self.adjacency, dtype=float)
            directed = self.directed
            if directed is None:
                directed = not np.array_equal(weights, weights.T)
            return graphs.Graph(weights, directed=directed)
        if X is None:
            raise ValueError("X is required when no adjacency is given")
        data = np.asarray(X, dtype=float)
        if data.ndim != 2 or data.shape[0] < 2:
            raise ValueError("inferring a graph needs X of shape (n_signals >= 2, n_vertices)")
        return graphs.correlation_graph(data.T)

    def transform(self, X):
        """Restrict signals (rows) to the kept vertices."""
        check_is_fitted(self, "partition_")
        data, single = check_signal_matrix(X, self.n_features_in_)
        out = data[:, self.partition_.kept]
        return out[0] if single else out

    def inverse_transform(self, X):
        """Rebuild full-length signals from kept-vertex samples."""
        check_is_fitted(self, "partition_")
        op = self.operator_
        if op.reconstruction_map is None:
            raise NotReconstructible("fitted partition cannot reconstruct; its sdqm is zero")
        part = self.partition_
        data, single = check_signal_matrix(X, part.kept.size)
        purged_vals = data @ op.reconstruction_map.T
        out = np.zeros((data.shape[0], self.n_features_in_),
                       dtype=np.result_type(data, purged_vals))
        out[:, part.kept] = data
        out[:, part.purged] = purged_vals
        return out[0] if single else out
