"""Constructors for the standard channel families."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .channels import KrausChannel
from .errors import InvalidChannel, NotStochastic, OutOfRange
from .numerics import hermitian_eig, prob_vector
from .states import check_state


def _check_prob(p: float, name: str = "p") -> float:
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"{name}={p} outside [0, 1]")
    return float(p)


def _psd_factors(m: np.ndarray, tol: float = 1e-12) -> list[np.ndarray]:
    """Vectors ``v`` with ``m = sum v v^dagger`` (eigenvectors scaled by sqrt eigenvalue)."""
    w, v = hermitian_eig(m)
    return [np.sqrt(lam) * v[:, k] for k, lam in enumerate(w) if lam > tol]


def identity(d: int) -> KrausChannel:
    return KrausChannel(np.eye(d, dtype=complex))


def unitary(u) -> KrausChannel:
    return KrausChannel(np.asarray(u, dtype=complex))


def isometry(v) -> KrausChannel:
    return KrausChannel(np.asarray(v, dtype=complex))


def replacement(d_in: int, sigma) -> KrausChannel:
    """``rho -> tr(rho) sigma``."""
    sigma = check_state(sigma)
    ops = [np.outer(vec, np.eye(d_in)[i]) for vec in _psd_factors(sigma) for i in range(d_in)]
    return KrausChannel.from_kraus(ops)


def erasure(d: int, p: float) -> KrausChannel:
    """``rho -> (1-p) rho + p |e><e|`` with the flag ``|e>`` as basis index ``d``."""
    p = _check_prob(p)
    embed = np.vstack([np.eye(d), np.zeros((1, d))])
    ops = [np.sqrt(1 - p) * embed]
    for i in range(d):
        k = np.zeros((d + 1, d))
        k[d, i] = np.sqrt(p)
        ops.append(k)
    return KrausChannel.from_kraus(ops)


def shift(d: int) -> np.ndarray:
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def clock(d: int) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def weyl(d: int, a: int, b: int) -> np.ndarray:
    """``X^a Z^b`` with ``X|j> = |j+1 mod d>`` and ``Z|j> = exp(2 pi i j / d)|j>``."""
    return np.linalg.matrix_power(shift(d), a) @ np.linalg.matrix_power(clock(d), b)


def weyl_basis(d: int) -> list[np.ndarray]:
    """All ``d^2`` Weyl operators, index ``a*d + b`` holding ``X^a Z^b``."""
    return [weyl(d, a, b) for a in range(d) for b in range(d)]


def pauli(probs: Sequence[float], d: int | None = None) -> KrausChannel:
    """Weyl-Pauli mixture ``rho -> sum_k q_k W_k rho W_k^dagger``.

    ``probs[a*d + b]`` weights ``X^a Z^b``; for d=2 the order is (I, Z, X, XZ).
    """
    q = prob_vector(probs)
    if d is None:
        d = int(round(np.sqrt(q.size)))
    if d * d != q.size:
        raise InvalidChannel(f"{q.size} probabilities is not d^2 for any d")
    ops = [np.sqrt(w) * u for w, u in zip(q, weyl_basis(d)) if w > 0]
    return KrausChannel.from_kraus(ops)


def depolarizing(d: int, p: float) -> KrausChannel:
    """``(1-p) rho + p/(d^2-1) sum_{k>0} W_k rho W_k^dagger``."""
    p = _check_prob(p)
    q = np.full(d * d, p / (d * d - 1))
    q[0] = 1 - p
    return pauli(q, d)


def dephasing(d: int, probs: Sequence[float]) -> KrausChannel:
    """Z-type Weyl mixture ``sum_b q_b Z^b rho Z^-b``."""
    q = prob_vector(probs)
    if q.size != d:
        raise InvalidChannel("dephasing needs d probabilities")
    full = np.zeros(d * d)
    full[:d] = q
    return pauli(full, d)


def completely_dephasing(d: int) -> KrausChannel:
    return KrausChannel(np.stack([np.diag(np.eye(d)[j]) for j in range(d)]).astype(complex))


def schur_dephasing(unitaries: Sequence) -> KrausChannel:
    """Schur-product channel ``rho -> rho o S`` with ``S_ik = <psi_k|psi_i>``.

    ``psi_i = U_i|0>`` and ``K_j = sum_i <j|psi_i> |i><i|``.
    """
    psis = np.stack([np.asarray(u, dtype=complex)[:, 0] for u in unitaries])  # row i = psi_i
    d = len(unitaries)
    if psis.shape[1] != d:
        raise InvalidChannel("need d unitaries of dimension d")
    ops = [np.diag(psis[:, j]) for j in range(d)]
    return KrausChannel.from_kraus(ops)


def eb_holevo(povm: Sequence, states: Sequence) -> KrausChannel:
    """Measure-and-prepare channel ``rho -> sum_b R_b tr(E_b rho)``."""
    if len(povm) != len(states) or not povm:
        raise InvalidChannel("need one output state per POVM element")
    ops = []
    for e, r in zip(povm, states):
        e = np.asarray(e, dtype=complex)
        for y in _psd_factors(e):
            for x in _psd_factors(check_state(r)):
                ops.append(np.outer(x, y.conj()))
    return KrausChannel.from_kraus(ops)


def qc(povm: Sequence) -> KrausChannel:
    """``rho -> sum_j tr(F_j rho) |j><j|``."""
    n = len(povm)
    return eb_holevo(povm, [np.diag(np.eye(n)[j]).astype(complex) for j in range(n)])


def cq(states: Sequence) -> KrausChannel:
    """``rho -> sum_k <k|rho|k> R_k``."""
    d = len(states)
    return eb_holevo([np.diag(np.eye(d)[k]).astype(complex) for k in range(d)], states)


def ad_qudit(gammas: Sequence[float]) -> KrausChannel:
    """Qudit amplitude damping with ``d-1`` decay rates.

    ``K_n = sqrt(g_n)|n><n+1|`` for ``n < d-1`` and
    ``K_{d-1} = |0><0| + sum_n sqrt(1-g_n)|n+1><n+1|``.
    """
    g = [_check_prob(x, "gamma") for x in gammas]
    d = len(g) + 1
    ops = []
    for n, gn in enumerate(g):
        k = np.zeros((d, d))
        k[n, n + 1] = np.sqrt(gn)
        ops.append(k)
    last = np.zeros((d, d))
    last[0, 0] = 1.0
    for n, gn in enumerate(g):
        last[n + 1, n + 1] = np.sqrt(1 - gn)
    ops.append(last)
    return KrausChannel.from_kraus(ops)


def ad_qubit(gamma: float) -> KrausChannel:
    return ad_qudit([gamma])


def qubit_extreme(a: float, b: float) -> KrausChannel:
    """``K_0 = cos a|0><0| + cos b|1><1|``, ``K_1 = sin a|1><0| + sin b|0><1|``."""
    ca, sa, cb, sb = np.cos(a), np.sin(a), np.cos(b), np.sin(b)
    k0 = np.array([[ca, 0], [0, cb]])
    k1 = np.array([[0, sb], [sa, 0]])
    return KrausChannel.from_kraus([k0, k1])


def check_stochastic(w, tol: float = 1e-10) -> np.ndarray:
    """Validate a column-stochastic matrix ``w[out, in] = P(out | in)``."""
    w = np.asarray(w, dtype=float)
    if w.ndim != 2:
        raise NotStochastic("stochastic map must be a matrix")
    if np.any(w < -tol):
        raise NotStochastic(f"negative entry {w.min():.3e}")
    colsum = w.sum(axis=0)
    if np.max(np.abs(colsum - 1)) > tol:
        raise NotStochastic(f"columns sum to {colsum}, not 1")
    return np.clip(w, 0.0, None)


def povm_of_stochastic(w) -> list[np.ndarray]:
    """Diagonal POVM ``F_j = sum_i w[j, i] |i><i|``."""
    w = check_stochastic(w)
    return [np.diag(w[j]).astype(complex) for j in range(w.shape[0])]


def simulate_classical(w) -> KrausChannel:
    """QC channel whose action on diagonal inputs is the stochastic map ``w``."""
    return qc(povm_of_stochastic(w))


ZOO = {
    "identity": identity,
    "replacement": replacement,
    "erasure": erasure,
    "pauli": pauli,
    "depolarizing": depolarizing,
    "dephasing": dephasing,
    "completely_dephasing": completely_dephasing,
    "schur_dephasing": schur_dephasing,
    "eb_holevo": eb_holevo,
    "qc": qc,
    "cq": cq,
    "ad_qudit": ad_qudit,
    "ad_qubit": ad_qubit,
    "qubit_extreme": qubit_extreme,
    "classical": simulate_classical,
    "unitary": unitary,
    "isometry": isometry,
}
