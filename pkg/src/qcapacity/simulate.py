"""Exact simulations of the channel-state duality and classical-channel emulation."""
from __future__ import annotations

import numpy as np

from .channels import ChoiState, apply
from .errors import DimensionMismatch
from .numerics import as_matrix, is_hermitian, matrix_sqrt_psd, partial_trace, prob_vector
from .states import check_state, ebit
from . import zoo


def heralded_readout(choi: ChoiState, rho, observable) -> tuple[float, float]:
    """Measure ``observable`` on the channel output using only the Choi state.

    The reference side is measured with Kraus operators
    ``{sqrt(rho^T), sqrt(1 - rho^T)}``. Given the first outcome (probability
    ``1/d_in``), the output side holds ``Phi(rho)``. Returns the conditional
    expectation and the herald probability.
    """
    rho = check_state(rho, dim=choi.d_in)
    obs = as_matrix(observable)
    if obs.shape != (choi.d_out, choi.d_out):
        raise DimensionMismatch(f"observable shape {obs.shape}, output dimension {choi.d_out}")
    if not is_hermitian(obs):
        raise ValueError("observable must be Hermitian")
    m = np.kron(np.eye(choi.d_out), matrix_sqrt_psd(rho.T))
    post = m @ choi.mat @ m.conj().T
    herald = float(np.trace(post).real)
    out = partial_trace(post, (choi.d_out, choi.d_in), keep=0) / herald
    return float(np.trace(obs @ out).real), herald


def classical_channel_io(stochastic, input_dist) -> np.ndarray:
    """Output distribution of a stochastic map, computed through its QC channel."""
    w = zoo.check_stochastic(stochastic)
    p = prob_vector(input_dist)
    if p.size != w.shape[1]:
        raise DimensionMismatch(f"{p.size} input probabilities, map has {w.shape[1]} inputs")
    ch = zoo.simulate_classical(w)
    return np.real(np.diag(apply(ch, np.diag(p).astype(complex))))


def dephase_ebit(d: int = 2) -> np.ndarray:
    """``(Delta (x) 1)(omega)``: the maximally classically correlated state."""
    from .channels import apply_extended

    return apply_extended(zoo.completely_dephasing(d), ebit(d), d)
