"""Distances between states and channels, and the bound chains relating them."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, apply_extended, choi_matrix
from .errors import DimensionMismatch
from .numerics import matrix_sqrt_psd, trace_norm
from .rand import ginibre, rng_of
from .states import check_state

FIDELITY_CLIP = 1e-8


def _pair(rho, sigma) -> tuple[np.ndarray, np.ndarray]:
    rho, sigma = check_state(rho), check_state(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"states of dimension {rho.shape[0]} and {sigma.shape[0]}")
    return rho, sigma


def trace_distance(rho, sigma) -> float:
    rho, sigma = _pair(rho, sigma)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(rho - sigma))))


def fidelity(rho, sigma) -> float:
    """Squared fidelity ``||sqrt(rho) sqrt(sigma)||_1^2``."""
    rho, sigma = _pair(rho, sigma)
    f = trace_norm(matrix_sqrt_psd(rho) @ matrix_sqrt_psd(sigma)) ** 2
    if f > 1 + FIDELITY_CLIP:
        raise ArithmeticError(f"fidelity {f} exceeds 1")
    return float(min(max(f, 0.0), 1.0))


def is_pure(rho, tol: float = 1e-9) -> bool:
    return abs(np.trace(rho @ rho).real - 1.0) <= tol


@dataclass(frozen=True)
class BoundReport:
    lower: float
    value: float
    upper: float
    violated: bool
    slack: float


def _report(lower: float, value: float, upper: float, slack: float) -> BoundReport:
    bad = value < lower - slack or value > upper + slack
    return BoundReport(lower, value, upper, bad, slack)


def check_fuchs_van_de_graaf(rho, sigma, slack: float = 1e-9) -> BoundReport:
    """``1 - sqrt(F) <= D <= sqrt(1 - F)``; when either state is pure the lower bound is ``1 - F``."""
    f = fidelity(rho, sigma)
    d = trace_distance(rho, sigma)
    lower = 1 - f if (is_pure(rho) or is_pure(sigma)) else 1 - np.sqrt(f)
    return _report(float(lower), d, float(np.sqrt(max(1 - f, 0.0))), slack)


def _same_shape(ch1: KrausChannel, ch2: KrausChannel):
    if (ch1.d_in, ch1.d_out) != (ch2.d_in, ch2.d_out):
        raise DimensionMismatch("channels must have equal input and output dimensions")


def choi_trace_distance(ch1: KrausChannel, ch2: KrausChannel) -> float:
    _same_shape(ch1, ch2)
    return trace_distance(choi_matrix(ch1), choi_matrix(ch2))


def entanglement_fidelity(ch1: KrausChannel, ch2: KrausChannel) -> float:
    """Fidelity between the two Choi states."""
    _same_shape(ch1, ch2)
    return fidelity(choi_matrix(ch1), choi_matrix(ch2))


def check_entanglement_fidelity_chain(
    ch1: KrausChannel, ch2: KrausChannel, unitary_second: bool = False, slack: float = 1e-9
) -> BoundReport:
    """Fuchs-van de Graaf for Choi states; lower bound ``1 - F_E`` when ``ch2`` is unitary."""
    fe = entanglement_fidelity(ch1, ch2)
    d = choi_trace_distance(ch1, ch2)
    lower = 1 - fe if unitary_second else 1 - np.sqrt(fe)
    return _report(float(lower), d, float(np.sqrt(max(1 - fe, 0.0))), slack)


def choi_diamond_bounds(ch1: KrausChannel, ch2: KrausChannel) -> tuple[float, float]:
    """Interval ``(2 D, 2 d D)`` containing the diamond distance, ``D`` the Choi trace distance."""
    d = choi_trace_distance(ch1, ch2)
    return 2 * d, 2 * ch1.d_in * d


def sampled_diamond_lower_bound(
    ch1: KrausChannel, ch2: KrausChannel, samples: int = 1000, seed=0
) -> float:
    """Max of ``||(Phi-Psi)(x)1 (psi)||_1`` over random pure inputs on system (x) reference."""
    _same_shape(ch1, ch2)
    rng = rng_of(seed)
    d = ch1.d_in
    best = 0.0
    for _ in range(samples):
        v = ginibre(d * d, 1, rng)[:, 0]
        v /= np.linalg.norm(v)
        psi = np.outer(v, v.conj())
        diff = apply_extended(ch1, psi, d) - apply_extended(ch2, psi, d)
        best = max(best, float(np.sum(np.abs(np.linalg.eigvalsh((diff + diff.conj().T) / 2)))))
    return best


__all__ = [
    "BoundReport",
    "check_entanglement_fidelity_chain",
    "check_fuchs_van_de_graaf",
    "choi_diamond_bounds",
    "choi_trace_distance",
    "entanglement_fidelity",
    "fidelity",
    "sampled_diamond_lower_bound",
    "trace_distance",
]
