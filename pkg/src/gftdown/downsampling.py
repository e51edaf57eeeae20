"""Partition-indexed transform blocks, quality scoring, reconstruction, and the
searches that decide which vertices to purge.

Splitting the frequency-ordered transform F by (low, high) rows and
(kept, purged) columns yields four blocks. The high/purged block decides
everything: its smallest singular value is the downsampling quality score
(``sdqm``), it is invertible exactly when bandlimited signals can be recovered
from the kept vertices, and its inverse gives both the reconstruction map
-inv(high_purged) @ high_kept and the transform that acts on the kept grid,
low_kept - low_purged @ inv(high_purged) @ high_kept.
"""

import math
from dataclasses import dataclass
from itertools import combinations
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from .errors import DimensionError, NotReconstructible, TooLarge
from .spectral import SpectralBasis, high_band_size, low_band_size
from .validation import check_vertex_indices, freeze_array

#: relative rank test: the high/purged block counts as invertible when
#: sigma_min > RANK_RTOL * sigma_max, which is scale invariant
RANK_RTOL = 1e-10

#: greedy candidate scores within this relative distance of the step maximum
#: are treated as tied, which keeps the search independent of BLAS rounding
GREEDY_TIE_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class Partition:
    """Disjoint kept/purged vertex sets covering 0..n-1 with |purged| = n//2."""

    kept: np.ndarray
    purged: np.ndarray

    def __post_init__(self):
        n = len(self.kept) + len(self.purged)
        kept = check_vertex_indices(self.kept, n, "kept").copy()
        purged = check_vertex_indices(self.purged, n, "purged").copy()
        both = np.concatenate([kept, purged])
        if np.unique(both).size != n:
            raise ValueError("kept and purged must disjointly cover 0..n-1")
        if purged.size != n // 2:
            raise ValueError(f"expected {n // 2} purged vertices, got {purged.size}")
        kept.setflags(write=False)
        purged.setflags(write=False)
        object.__setattr__(self, "kept", kept)
        object.__setattr__(self, "purged", purged)

    @property
    def n(self) -> int:
        return self.kept.size + self.purged.size

    @classmethod
    def from_kept(cls, kept, n: int) -> "Partition":
        kept = check_vertex_indices(kept, n, "kept")
        purged = np.setdiff1d(np.arange(n), kept)
        return cls(kept, purged)

    @classmethod
    def from_purged(cls, purged, n: int) -> "Partition":
        purged = check_vertex_indices(purged, n, "purged")
        kept = np.setdiff1d(np.arange(n), purged)
        return cls(kept, purged)


@dataclass(frozen=True, eq=False)
class DownsampleOperator:
    """The four partition-indexed blocks of a frequency-ordered transform.

    ``reconstruction_map`` and ``downsampled_gft`` are present only when the
    high/purged block passed the invertibility test; otherwise they are None
    and the scheme cannot reconstruct (``sdqm`` is still reported).
    """

    partition: Partition
    low_kept: np.ndarray
    low_purged: np.ndarray
    high_kept: np.ndarray
    high_purged: np.ndarray
    sdqm: float
    reconstruction_map: Optional[np.ndarray]
    downsampled_gft: Optional[np.ndarray]

    def __post_init__(self):
        for name in ("low_kept", "low_purged", "high_kept", "high_purged",
                     "reconstruction_map", "downsampled_gft"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, freeze_array(value))

    @property
    def n(self) -> int:
        return self.partition.n


def partition_blocks(basis: SpectralBasis, partition: Partition) -> DownsampleOperator:
    """Slice the transform by band rows and partition columns and score the result.

    Columns follow the order stored in the partition; the smallest singular
    value of the high/purged block is invariant to that order.
    """
    n = basis.n
    if partition.n != n:
        raise DimensionError(f"partition covers {partition.n} vertices, basis has {n}")
    nl = low_band_size(n)
    low, high = basis.F[:nl, :], basis.F[nl:, :]
    k, p = partition.kept, partition.purged
    f1, f2 = low[:, k], low[:, p]
    f3, f4 = high[:, k], high[:, p]
    sig = np.linalg.svd(f4, compute_uv=False)
    sdqm = float(sig[-1])
    recon = None
    down = None
    if sig[0] > 0 and sig[-1] > RANK_RTOL * sig[0]:
        recon = -np.linalg.solve(f4, f3)
        down = f1 + f2 @ recon
    return DownsampleOperator(partition=partition, low_kept=f1, low_purged=f2,
                              high_kept=f3, high_purged=f4, sdqm=sdqm,
                              reconstruction_map=recon, downsampled_gft=down)


def is_perfectly_reconstructible(op: DownsampleOperator) -> bool:
    """True when the high/purged block passed the relative-rank invertibility test."""
    return op.reconstruction_map is not None


def reconstruct(op: DownsampleOperator, kept_values) -> np.ndarray:
    """Recover the purged samples from the kept ones (exact for bandlimited input).

    The result follows the partition's purged order; use ``assemble_signal`` to
    interleave it back into vertex order.
    """
    if op.reconstruction_map is None:
        raise NotReconstructible("the high/purged block is singular for this partition")
    x = np.asarray(kept_values)
    if x.shape != (op.partition.kept.size,):
        raise DimensionError(
            f"expected {op.partition.kept.size} kept samples, got shape {x.shape}")
    return op.reconstruction_map @ x


def assemble_signal(partition: Partition, kept_values, purged_values) -> np.ndarray:
    """Interleave kept and purged samples back into vertex order."""
    kv = np.asarray(kept_values)
    pv = np.asarray(purged_values)
    if kv.shape != (partition.kept.size,) or pv.shape != (partition.purged.size,):
        raise DimensionError("kept/purged sample counts do not match the partition")
    out = np.zeros(partition.n, dtype=np.result_type(kv, pv))
    out[partition.kept] = kv
    out[partition.purged] = pv
    return out


def reconstruct_signal(op: DownsampleOperator, kept_values) -> np.ndarray:
    """Full-length signal with purged entries filled in by the reconstruction map."""
    return assemble_signal(op.partition, kept_values, reconstruct(op, kept_values))


def downsampled_gft(op: DownsampleOperator) -> np.ndarray:
    """Transform acting on the kept grid: maps kept samples of any bandlimited
    signal to that signal's low-band coefficients."""
    if op.downsampled_gft is None:
        raise NotReconstructible("the high/purged block is singular for this partition")
    return op.downsampled_gft


def error_bound(eps: float, sdqm: float) -> float:
    """Worst-case reconstruction error norm when the high band has norm ``eps``."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if sdqm <= 0:
        raise NotReconstructible("quality score must be positive for a finite bound")
    return eps / sdqm


def reconstruction_accuracy(x, e_r) -> float:
    """Accuracy in dB, 20*log10(|x| / |e_r|); +inf signals perfect reconstruction."""
    xn = float(np.linalg.norm(x))
    en = float(np.linalg.norm(e_r))
    if en == 0:
        return math.inf
    if xn == 0:
        return -math.inf
    return float(20.0 * np.log10(xn / en))


def greedy_downsample(basis: SpectralBasis) -> Tuple[Partition, DownsampleOperator]:
    """Grow the purge set one vertex at a time by the best-scoring column.

    Each step scores every remaining candidate by the smallest singular value
    of the high-band rows restricted to the columns purged so far plus the
    candidate, and purges the argmax. Scores within GREEDY_TIE_RTOL (relative)
    of the step maximum count as tied; ties go to the lowest vertex index, so
    the result does not depend on evaluation order or BLAS rounding noise.
    """
    n = basis.n
    if n < 2:
        raise DimensionError("downsampling needs at least 2 vertices")
    fh = basis.F[low_band_size(n):, :]
    purged: List[int] = []
    remaining = list(range(n))
    for _ in range(high_band_size(n)):
        scores = np.array([
            np.linalg.svd(fh[:, purged + [c]], compute_uv=False)[-1]
            for c in remaining
        ])
        cutoff = scores.max() * (1.0 - GREEDY_TIE_RTOL)
        winner = remaining[int(np.flatnonzero(scores >= cutoff)[0])]
        purged.append(winner)
        remaining.remove(winner)
    part = Partition(np.array(remaining), np.array(sorted(purged)))
    return part, partition_blocks(basis, part)


class ExhaustiveResult(NamedTuple):
    partition: Partition
    operator: DownsampleOperator
    table: List[Tuple[Partition, float]]


def exhaustive_downsample(basis: SpectralBasis, max_n: int = 16) -> ExhaustiveResult:
    """Score every possible purge set and return the best plus the full table.

    There are C(n, n//2) purge sets, so this is gated by ``max_n``; it exists
    as ground truth for small graphs, not as a practical search. Ties on the
    optimum go to the first purge set in lexicographic order.
    """
    n = basis.n
    if n > max_n:
        raise TooLarge(
            f"{n} vertices means C({n},{n // 2}) purge sets; raise max_n to force this")
    fh = basis.F[low_band_size(n):, :]
    everything = np.arange(n)
    table: List[Tuple[Partition, float]] = []
    best_idx, best = -1, -1.0
    for i, purged in enumerate(combinations(range(n), high_band_size(n))):
        cols = list(purged)
        score = float(np.linalg.svd(fh[:, cols], compute_uv=False)[-1])
        part = Partition(np.setdiff1d(everything, cols), np.array(cols))
        table.append((part, score))
        if score > best:
            best, best_idx = score, i
    part = table[best_idx][0]
    return ExhaustiveResult(part, partition_blocks(basis, part), table)
