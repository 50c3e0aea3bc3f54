"""Density-matrix validation and a few standard states."""
from __future__ import annotations

import numpy as np

from .errors import InvalidState
from .numerics import as_matrix

STATE_TOL = 1e-10


def check_state(rho, dim: int | None = None, tol: float = STATE_TOL) -> np.ndarray:
    """Return ``rho`` as a complex array after checking it is a density matrix.

    Hermiticity, trace and the smallest eigenvalue are each checked against
    ``tol``. Raises InvalidState naming the violated invariant.
    """
    m = as_matrix(rho)
    if m.shape[0] != m.shape[1]:
        raise InvalidState(f"state of shape {m.shape} is not square")
    if dim is not None and m.shape[0] != dim:
        raise InvalidState(f"state has dimension {m.shape[0]}, expected {dim}")
    herm = np.max(np.abs(m - m.conj().T))
    if herm > tol:
        raise InvalidState(f"not Hermitian: max |rho - rho^dagger| = {herm:.3e}")
    tr = np.trace(m).real
    if abs(tr - 1.0) > tol:
        raise InvalidState(f"trace is {tr:.12f}, not 1")
    w = np.linalg.eigvalsh((m + m.conj().T) / 2)
    if w[0] < -tol:
        raise InvalidState(f"minimum eigenvalue {w[0]:.3e} is negative")
    return m


def maximally_mixed(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex) / d


def ket(index: int, d: int) -> np.ndarray:
    v = np.zeros(d, dtype=complex)
    v[index] = 1.0
    return v


def projector(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex).ravel()
    return np.outer(v, v.conj())


def basis_projector(index: int, d: int) -> np.ndarray:
    return projector(ket(index, d))


def ebit_vector(d: int) -> np.ndarray:
    """``sum_i |ii> / sqrt(d)``."""
    return np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)


def ebit(d: int) -> np.ndarray:
    return projector(ebit_vector(d))
