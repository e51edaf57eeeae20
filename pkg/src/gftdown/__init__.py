"""Graph signal downsampling driven by the smallest singular value of the GFT.

Pick the half of a graph's vertices to keep so that bandlimited signals stay
exactly recoverable and lowpass signals reconstruct with the smallest
worst-case error. Works on directed graphs, undirected graphs, and graphs
with negative edge weights.
"""

__version__ = "0.1.0"

from .baselines import CutReport, cut_index, mst_downsample, polarity_downsample
from .downsampling import (DownsampleOperator, ExhaustiveResult, Partition,
                           assemble_signal, downsampled_gft, error_bound,
                           exhaustive_downsample, greedy_downsample,
                           is_perfectly_reconstructible, partition_blocks,
                           reconstruct, reconstruct_signal,
                           reconstruction_accuracy)
from .errors import (ComplexPolarityWarning, DefectiveMatrix, DegenerateData,
                     DegenerateDegree, DegenerateGraph, DegenerateSpectrum,
                     DimensionError, GraphDownsampleError, InvalidSize,
                     NotReconstructible, TooLarge, UnsupportedGraph)
from .estimators import GraphDownsampler
from .experiments import (DEFAULT_SEED, ExperimentReport, TrialConfig,
                          accuracy_sweep, dct_demo, random_graph_trial,
                          save_report)
from .graphs import (Graph, SpatialTable, correlation_graph,
                     generate_bipartite, generate_dct_path,
                     generate_directed_cycle, generate_random,
                     graph_from_coordinates, graph_from_correlation,
                     kronecker_graph)
from .spectral import (SpectralBasis, Spectrum, bandwidth, forward, gft,
                       high_band_size, inverse, low_band_size,
                       make_lowpass_signal)

__all__ = [
    "__version__",
    "ComplexPolarityWarning", "CutReport", "DefectiveMatrix", "DegenerateData",
    "DegenerateDegree", "DegenerateGraph", "DegenerateSpectrum",
    "DimensionError", "DownsampleOperator", "ExhaustiveResult",
    "ExperimentReport", "Graph", "GraphDownsampleError", "GraphDownsampler",
    "InvalidSize", "NotReconstructible", "Partition", "SpatialTable",
    "SpectralBasis", "Spectrum", "TooLarge", "TrialConfig",
    "UnsupportedGraph", "DEFAULT_SEED",
    "accuracy_sweep", "assemble_signal", "bandwidth", "correlation_graph",
    "cut_index", "dct_demo", "downsampled_gft", "error_bound",
    "exhaustive_downsample", "forward", "generate_bipartite",
    "generate_dct_path", "generate_directed_cycle", "generate_random", "gft",
    "graph_from_coordinates", "graph_from_correlation", "greedy_downsample",
    "high_band_size", "inverse", "is_perfectly_reconstructible",
    "kronecker_graph", "low_band_size", "make_lowpass_signal",
    "mst_downsample", "partition_blocks", "polarity_downsample",
    "random_graph_trial", "reconstruct", "reconstruct_signal",
    "reconstruction_accuracy", "save_report",
]
