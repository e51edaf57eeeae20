"""Graph Fourier transforms: three variants, frequency ordering, band bookkeeping.

The adjacency variant eigendecomposes the weight matrix A = V diag(lam) V^-1 and
uses F = V^-1 as the forward transform; frequencies ascend with |1 - lam/lam_max|.
The Laplacian variants come from the symmetric eigendecomposition of L = D - A
(optionally degree-normalized) with F = V^T and frequencies ascending with the
eigenvalue. Rows of F are always ordered low to high frequency, and the low band
holds the first n - n//2 of them.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (DefectiveMatrix, DegenerateDegree, DegenerateSpectrum,
                     DimensionError, UnsupportedGraph)
from .graphs import Graph
from .validation import check_signal, freeze_array

VARIANTS = ("adjacency", "laplacian", "normalized_laplacian")

#: eigenvector matrices with a 2-norm condition number above this are treated
#: as numerically defective (not diagonalizable within tolerance)
DEFECTIVE_CONDITION = 1e8

_MAG_TIE_REL = 1e-12  # relative slack when comparing eigenvalue magnitudes


def low_band_size(n: int) -> int:
    """Number of low-frequency coefficients: n - n//2."""
    return n - n // 2


def high_band_size(n: int) -> int:
    """Number of high-frequency coefficients: n//2."""
    return n // 2


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """Forward transform F (rows ordered low -> high frequency) and its inverse.

    ``lambda_max`` is only set for the adjacency variant, where it anchors the
    frequency ordering. ``basis_condition`` is the 2-norm condition number of
    the eigenvector matrix (1 for the orthogonal variants).
    """

    variant: str
    F: np.ndarray
    F_inv: np.ndarray
    eigenvalues: np.ndarray
    lambda_max: Optional[complex]
    basis_condition: float

    def __post_init__(self):
        for name in ("F", "F_inv", "eigenvalues"):
            object.__setattr__(self, name, freeze_array(getattr(self, name)))

    @property
    def n(self) -> int:
        return self.F.shape[0]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Transform coefficients in frequency order, with low/high band views."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = freeze_array(self.coefficients)
        if c.ndim != 1:
            raise DimensionError("spectrum coefficients must be a vector")
        object.__setattr__(self, "coefficients", c)

    @property
    def n(self) -> int:
        return self.coefficients.shape[0]

    @property
    def low(self) -> np.ndarray:
        return self.coefficients[: low_band_size(self.n)]

    @property
    def high(self) -> np.ndarray:
        return self.coefficients[low_band_size(self.n):]


def _normalize_columns(V):
    """Unit 2-norm columns with the first significant entry rotated real-positive.

    Eigenvectors are only defined up to scale and phase; this pins both so that
    repeated decompositions of the same matrix are bitwise identical.
    """
    V = np.array(V)
    for j in range(V.shape[1]):
        v = V[:, j]
        nrm = np.linalg.norm(v)
        if nrm == 0:  # cannot happen for true eigenvectors
            continue
        v = v / nrm
        anchor = np.flatnonzero(np.abs(v) > 1e-12 * np.abs(v).max())[0]
        pivot = v[anchor]
        V[:, j] = v * (abs(pivot) / pivot)
    return V


def _pick_lambda_max(lam):
    """Largest-magnitude eigenvalue; magnitude ties resolve by (real, imag)."""
    mags = np.abs(lam)
    top = mags.max()
    if top == 0:
        raise DegenerateSpectrum("all eigenvalues are zero, no frequency ordering exists")
    cand = np.flatnonzero(mags >= top * (1 - _MAG_TIE_REL))
    best = max(cand, key=lambda i: (lam[i].real, lam[i].imag))
    return lam[best]


def gft(graph: Graph, variant: str = "adjacency") -> SpectralBasis:
    """Eigendecompose a graph into a frequency-ordered Fourier basis.

    Raises DefectiveMatrix when the adjacency eigenvectors are too ill
    conditioned to trust (condition number above DEFECTIVE_CONDITION),
    DegenerateSpectrum when the spectrum is identically zero, and
    DegenerateDegree / UnsupportedGraph for Laplacians on unsuitable graphs.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if variant == "adjacency":
        return _adjacency_basis(graph)
    return _laplacian_basis(graph, normalized=variant == "normalized_laplacian")


def _adjacency_basis(graph):
    a = graph.weights
    n = graph.n
    symmetric = np.array_equal(a, a.T)
    if symmetric:
        lam, V = np.linalg.eigh(a)
    else:
        lam, V = np.linalg.eig(a)
    V = _normalize_columns(V)
    condition = float(np.linalg.cond(V, 2))
    if not np.isfinite(condition) or condition > DEFECTIVE_CONDITION:
        raise DefectiveMatrix(
            f"eigenvector condition number {condition:.3g} exceeds {DEFECTIVE_CONDITION:.0e}")
    lam_c = lam.astype(complex)
    lam_max = _pick_lambda_max(lam_c)
    key = np.abs(1 - lam_c / lam_max)
    perm = sorted(range(n), key=lambda i: (key[i], -lam_c[i].real, -lam_c[i].imag, i))
    lam = lam[perm]
    V = V[:, perm]
    if symmetric:
        F = V.T.copy()  # orthonormal, so the transpose is the exact inverse
    else:
        F = np.linalg.inv(V)
    return SpectralBasis(variant="adjacency", F=F, F_inv=V, eigenvalues=lam,
                         lambda_max=complex(lam_max), basis_condition=condition)


def _laplacian_basis(graph, normalized):
    if graph.directed:
        raise UnsupportedGraph("Laplacian transforms are only defined for undirected graphs")
    a = graph.weights
    d = a.sum(axis=1)
    if normalized:
        if np.any(d <= 0):
            raise DegenerateDegree("normalized Laplacian needs strictly positive degrees")
    elif np.any(d < 0):
        raise DegenerateDegree("Laplacian needs nonnegative degrees")
    lap = np.diag(d) - a
    if normalized:
        inv_sqrt = 1.0 / np.sqrt(d)
        lap = inv_sqrt[:, None] * lap * inv_sqrt[None, :]
        lap = (lap + lap.T) / 2.0
    lam, V = np.linalg.eigh(lap)
    perm = np.argsort(lam, kind="stable")
    lam = lam[perm]
    V = _normalize_columns(V[:, perm])
    variant = "normalized_laplacian" if normalized else "laplacian"
    return SpectralBasis(variant=variant, F=V.T.copy(), F_inv=V, eigenvalues=lam,
                         lambda_max=None, basis_condition=float(np.linalg.cond(V, 2)))


def forward(basis: SpectralBasis, x) -> Spectrum:
    """Transform a vertex-domain signal into frequency-ordered coefficients."""
    v = check_signal(x, basis.n)
    return Spectrum(basis.F @ v)


def inverse(basis: SpectralBasis, spectrum) -> np.ndarray:
    """Map frequency coefficients (a Spectrum or plain vector) back to vertices."""
    c = spectrum.coefficients if isinstance(spectrum, Spectrum) else np.asarray(spectrum)
    if c.shape != (basis.n,):
        raise DimensionError(f"expected {basis.n} coefficients, got shape {c.shape}")
    return basis.F_inv @ c


def bandwidth(spectrum, tol: float = 0.0) -> int:
    """Smallest index past which every coefficient magnitude stays within ``tol``."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    c = spectrum.coefficients if isinstance(spectrum, Spectrum) else np.asarray(spectrum)
    above = np.flatnonzero(np.abs(c) > tol)
    return 0 if above.size == 0 else int(above[-1]) + 1


def make_lowpass_signal(basis: SpectralBasis, low_profile, eps: float, seed) -> np.ndarray:
    """Synthesize a vertex-domain signal with exact high-band norm ``eps``.

    The low band equals ``low_profile`` verbatim; the high band is a seeded
    random direction scaled so its norm is exactly ``eps`` (zero when ``eps``
    is zero). ``seed`` may be anything ``numpy.random.default_rng`` accepts,
    including an existing generator.
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    n = basis.n
    lo = np.asarray(low_profile)
    if lo.shape != (low_band_size(n),):
        raise DimensionError(
            f"low profile must have length {low_band_size(n)}, got shape {lo.shape}")
    nh = high_band_size(n)
    if eps == 0 or nh == 0:
        hi = np.zeros(nh)
    else:
        rng = np.random.default_rng(seed)
        hi = rng.standard_normal(nh)
        if np.iscomplexobj(basis.F_inv):
            hi = hi + 1j * rng.standard_normal(nh)
        hi = hi * (eps / np.linalg.norm(hi))
    return basis.F_inv @ np.concatenate([lo, hi])
