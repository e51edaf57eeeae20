"""Exception types shared across the package."""


class GraphDownsampleError(Exception):
    """Base class for every domain error raised by this package."""


class InvalidSize(GraphDownsampleError):
    """A generator was asked for a graph smaller than it supports."""


class DimensionError(GraphDownsampleError):
    """Vector or matrix dimensions do not match the graph."""


class DegenerateData(GraphDownsampleError):
    """Tabular input cannot produce a usable graph (zero variance, coincident points)."""


class DegenerateGraph(GraphDownsampleError):
    """The graph has no edge weight to work with."""


class DegenerateDegree(GraphDownsampleError):
    """Vertex degrees violate what the requested Laplacian needs."""


class DegenerateSpectrum(GraphDownsampleError):
    """No usable frequency ordering (largest eigenvalue is zero)."""


class DefectiveMatrix(GraphDownsampleError):
    """Adjacency matrix is not diagonalizable within tolerance."""


class NotReconstructible(GraphDownsampleError):
    """The downsampling scheme cannot recover the purged samples."""


class TooLarge(GraphDownsampleError):
    """Problem size exceeds what exhaustive search is willing to attempt."""


class UnsupportedGraph(GraphDownsampleError):
    """The operation does not apply to this kind of graph."""


class ComplexPolarityWarning(UserWarning):
    """Polarity split fell back to the real parts of a genuinely complex eigenvector."""


#: errors that mean the caller handed us bad input, as opposed to a property
#: of the problem discovered during computation
INPUT_ERRORS = (InvalidSize, DimensionError, TooLarge)
