"""Input validation helpers; every user-facing entry point funnels through these."""

import numpy as np

from .errors import DimensionError


def check_adjacency(weights):
    """Coerce to a square matrix of finite float64 weights."""
    a = np.asarray(weights, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"adjacency must be a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise DimensionError("adjacency needs at least one vertex")
    if not np.all(np.isfinite(a)):
        raise ValueError("adjacency contains non-finite entries")
    return a


def check_signal(x, n, name="signal"):
    """Coerce to a length-n vector (real or complex)."""
    v = np.asarray(x)
    if v.ndim != 1 or v.shape[0] != n:
        raise DimensionError(f"{name} must be a length-{n} vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite entries")
    return v


def check_signal_matrix(X, n, name="signals"):
    """Coerce to a (n_signals, n) matrix; a single vector is accepted too.

    Returns the 2-D array and a flag telling whether the input was 1-D.
    """
    a = np.asarray(X)
    single = a.ndim == 1
    if single:
        a = a[None, :]
    if a.ndim != 2 or a.shape[1] != n:
        raise DimensionError(f"{name} must have {n} columns, got shape {np.asarray(X).shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contain non-finite entries")
    return a, single


def freeze_array(values, dtype=None):
    """Defensive copy marked read-only, for immutable value objects."""
    a = np.array(values, dtype=dtype)
    a.setflags(write=False)
    return a


def check_vertex_indices(indices, n, name="indices"):
    """Coerce to a 1-D integer index array with entries in [0, n)."""
    idx = np.asarray(indices, dtype=np.intp)
    if idx.ndim != 1:
        raise DimensionError(f"{name} must be a 1-D index list")
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise DimensionError(f"{name} must lie in [0, {n})")
    return idx
