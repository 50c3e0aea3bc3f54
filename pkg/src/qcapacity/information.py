"""Entropies and coherent information of channels (base-2 logarithms)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, apply, apply_extended, environment_state
from .errors import DimensionMismatch
from .numerics import entropy_of_weights, psd_eigenvalues
from .states import check_state, maximally_mixed

EIG_CUTOFF = 1e-12


def von_neumann_entropy(rho) -> float:
    """``-tr rho log2 rho``; eigenvalues below 1e-12 contribute nothing."""
    m = check_state(rho)
    return entropy_of_weights(psd_eigenvalues(m, tol=1e-10), cutoff=EIG_CUTOFF)


def _entropy_unchecked(m: np.ndarray) -> float:
    # outputs of validated channels; round-off may leave tiny negatives
    w = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return entropy_of_weights(w, cutoff=EIG_CUTOFF)


def relative_entropy(rho, sigma, support_tol: float = 1e-10) -> float:
    """``tr rho (log2 rho - log2 sigma)``; ``inf`` when supp(rho) is not inside supp(sigma)."""
    rho = check_state(rho)
    sigma = check_state(sigma, dim=rho.shape[0])
    wr, vr = np.linalg.eigh((rho + rho.conj().T) / 2)
    ws, vs = np.linalg.eigh((sigma + sigma.conj().T) / 2)
    # overlap[i, j] = |<r_i|s_j>|^2
    overlap = np.abs(vr.conj().T @ vs) ** 2
    pos_r = wr > EIG_CUTOFF
    null_s = ws <= support_tol
    leak = float(np.sum(wr[pos_r, None] * overlap[pos_r][:, null_s]))
    if leak > support_tol:
        return float("inf")
    log_s = np.where(null_s, 0.0, np.log2(np.where(null_s, 1.0, ws)))
    cross = float(np.sum(wr[pos_r, None] * overlap[pos_r] * log_s[None, :]))
    self_term = float(np.sum(wr[pos_r] * np.log2(wr[pos_r])))
    return max(self_term - cross, 0.0)


@dataclass(frozen=True, eq=False)
class PurifiedState:
    """``|phi> = sum_i sqrt(p_i) |i>|i>`` in the eigenbasis of ``base`` (system first)."""

    base: np.ndarray
    vector: np.ndarray

    @property
    def projector(self) -> np.ndarray:
        return np.outer(self.vector, self.vector.conj())


def purify(rho) -> PurifiedState:
    rho = check_state(rho)
    d = rho.shape[0]
    w, v = np.linalg.eigh((rho + rho.conj().T) / 2)
    w = np.clip(w, 0.0, None)
    # sum_i sqrt(p_i) |v_i> (x) |i>
    vec = (v * np.sqrt(w)).reshape(d * d)
    vec = vec / np.linalg.norm(vec)
    return PurifiedState(rho, vec)


def coherent_information(rho, ch: KrausChannel, route: str = "environment") -> float:
    """``H(Phi(rho)) - H((Phi (x) 1)(phi_rho))``.

    ``route="environment"`` evaluates the second term as the entropy of the
    complementary output (an ``r x r`` matrix); ``route="purification"``
    builds the joint ``d_out*d x d_out*d`` state explicitly.
    """
    rho = check_state(rho)
    if rho.shape[0] != ch.d_in:
        raise DimensionMismatch(f"state dimension {rho.shape[0]} != channel input {ch.d_in}")
    h_out = _entropy_unchecked(apply(ch, rho))
    if route == "environment":
        h_joint = _entropy_unchecked(environment_state(ch, rho))
    elif route == "purification":
        phi = purify(rho)
        h_joint = _entropy_unchecked(apply_extended(ch, phi.projector, ch.d_in))
    else:
        raise ValueError(f"unknown route {route!r}")
    return h_out - h_joint


def coherent_mutual_information(rho, ch: KrausChannel) -> float:
    """``H(rho) + I_c(rho, Phi)``, never negative."""
    return von_neumann_entropy(rho) + coherent_information(rho, ch)


def channel_coherent_info(ch: KrausChannel) -> float:
    """Coherent information at the maximally mixed input."""
    return coherent_information(maximally_mixed(ch.d_in), ch)
