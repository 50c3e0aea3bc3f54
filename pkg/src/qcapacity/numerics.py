"""Dense complex linear algebra and scalar entropies.

All logarithms are base 2. Bipartite matrices use the ordering
``|i>|j> -> i * d2 + j`` (first factor is the slow index).
"""
from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidDistribution,
    NotHermitian,
    NotPSD,
    NotSquare,
    OutOfRange,
)

HERMITIAN_TOL = 1e-10
CLIP_TOL = 1e-10
PSD_TOL = 1e-8


class Spectrum(NamedTuple):
    """Ascending eigenvalues and the matching eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatch(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    return m


def _square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"matrix of shape {m.shape} is not square")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(a, -1, -2))


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    m = _square(a)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def hermitian_eig(a, tol: float = HERMITIAN_TOL) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    Raises NotHermitian when ``max|A - A^dagger| > tol``.
    """
    m = _square(a)
    if not is_hermitian(m, tol):
        raise NotHermitian(f"max |A - A^dagger| = {np.max(np.abs(m - m.conj().T)):.3e}")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return Spectrum(w, v)


def psd_eigenvalues(a, tol: float = PSD_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian PSD matrix with round-off negatives clipped to 0."""
    w = np.linalg.eigvalsh((_square(a) + dagger(_square(a))) / 2)
    if w[0] < -tol:
        raise NotPSD(f"minimum eigenvalue {w[0]:.3e} below -{tol:g}")
    return np.clip(w, 0.0, None)


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def _check_bipartite(m: np.ndarray, dims: tuple[int, int]) -> tuple[int, int]:
    d1, d2 = (int(x) for x in dims)
    if m.shape != (d1 * d2, d1 * d2):
        raise DimensionMismatch(f"matrix shape {m.shape} incompatible with dims {dims}")
    return d1, d2


def partial_trace(a, dims: tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one factor of a bipartite operator, keeping factor ``keep`` (0 or 1)."""
    m = as_matrix(a)
    d1, d2 = _check_bipartite(m, dims)
    t = m.reshape(d1, d2, d1, d2)
    if keep == 0:
        return np.einsum("ijkj->ik", t)
    if keep == 1:
        return np.einsum("ijil->jl", t)
    raise ValueError("keep must be 0 or 1")


def partial_transpose(a, dims: tuple[int, int], which: int) -> np.ndarray:
    m = as_matrix(a)
    d1, d2 = _check_bipartite(m, dims)
    t = m.reshape(d1, d2, d1, d2)
    if which == 0:
        t = t.transpose(2, 1, 0, 3)
    elif which == 1:
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError("which must be 0 or 1")
    return t.reshape(d1 * d2, d1 * d2)


def matrix_sqrt_psd(a) -> np.ndarray:
    m = _square(a)
    w, v = hermitian_eig(m, tol=max(HERMITIAN_TOL, 1e-10 * np.max(np.abs(m))))
    if w[0] < -PSD_TOL:
        raise NotPSD(f"minimum eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def trace_norm(a) -> float:
    return float(np.sum(np.linalg.svd(_square(a), compute_uv=False)))


def prob_vector(p: Sequence[float], tol: float = 1e-10) -> np.ndarray:
    """Validate a probability vector and return it as a float array."""
    q = np.asarray(p, dtype=float).ravel()
    if q.size == 0:
        raise InvalidDistribution("empty distribution")
    if np.any(q < -1e-12) or abs(q.sum() - 1.0) > tol:
        raise InvalidDistribution(f"not a distribution: min={q.min():.3e}, sum={q.sum():.12f}")
    return np.clip(q, 0.0, None)


def entropy_of_weights(w: np.ndarray, cutoff: float = 1e-12) -> float:
    """-sum w log2 w over weights above ``cutoff``; no normalization check."""
    w = np.asarray(w, dtype=float)
    w = w[w > cutoff]
    return float(-np.sum(w * np.log2(w)))


def shannon_entropy(p: Sequence[float]) -> float:
    return entropy_of_weights(prob_vector(p), cutoff=0.0)


def binary_entropy(x: float) -> float:
    if not -1e-12 <= x <= 1 + 1e-12:
        raise OutOfRange(f"binary entropy argument {x} outside [0, 1]")
    x = min(max(float(x), 0.0), 1.0)
    return entropy_of_weights(np.array([x, 1.0 - x]), cutoff=0.0)
