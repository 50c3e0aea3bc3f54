"""Seeded random states, unitaries and channels for tests and audits."""
from __future__ import annotations

import numpy as np

from .channels import KrausChannel
from . import zoo


def rng_of(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rows: int, cols: int, rng) -> np.ndarray:
    rng = rng_of(rng)
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def haar_isometry(rows: int, cols: int, rng) -> np.ndarray:
    """Haar-random isometry ``rows x cols`` (rows >= cols)."""
    if rows < cols:
        raise ValueError(f"no {rows}x{cols} isometry exists")
    q, r = np.linalg.qr(ginibre(rows, cols, rng))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def haar_unitary(d: int, rng) -> np.ndarray:
    return haar_isometry(d, d, rng)


def random_state(d: int, rng, rank: int | None = None) -> np.ndarray:
    g = ginibre(d, rank or d, rng)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure(d: int, rng) -> np.ndarray:
    return random_state(d, rng, rank=1)


def random_channel(d_in: int, d_out: int | None = None, rank: int = 2, rng=None) -> KrausChannel:
    """Channel from a Haar-random Stinespring isometry with ``rank`` Kraus operators."""
    d_out = d_in if d_out is None else d_out
    if rank * d_out < d_in:
        raise ValueError(f"rank {rank} too small: need rank * d_out >= d_in")
    v = haar_isometry(rank * d_out, d_in, rng)
    return KrausChannel(v.reshape(rank, d_out, d_in))


def random_mixed_unitary(d: int, n: int, rng) -> KrausChannel:
    """Unital channel ``sum_k q_k U_k rho U_k^dagger``."""
    rng = rng_of(rng)
    q = rng.dirichlet(np.ones(n))
    return KrausChannel(np.stack([np.sqrt(w) * haar_unitary(d, rng) for w in q]))


def random_pauli(d: int, rng) -> KrausChannel:
    rng = rng_of(rng)
    return zoo.pauli(rng.dirichlet(np.ones(d * d)), d)


def random_povm(d: int, n: int, rng) -> list[np.ndarray]:
    """``n``-outcome POVM ``F_j = S^-1/2 G_j S^-1/2`` from random positive ``G_j``."""
    rng = rng_of(rng)
    gs = [random_state(d, rng) for _ in range(n)]
    s = sum(gs)
    w, v = np.linalg.eigh(s)
    s_inv_half = (v / np.sqrt(w)) @ v.conj().T
    return [s_inv_half @ g @ s_inv_half for g in gs]


def random_eb(d_in: int, d_out: int, n: int, rng) -> KrausChannel:
    rng = rng_of(rng)
    povm = random_povm(d_in, n, rng)
    return zoo.eb_holevo(povm, [random_state(d_out, rng) for _ in range(n)])


def random_qc(d: int, n: int, rng) -> KrausChannel:
    return zoo.qc(random_povm(d, n, rng))


def random_stochastic(n_out: int, n_in: int, rng) -> np.ndarray:
    rng = rng_of(rng)
    return rng.dirichlet(np.ones(n_out), size=n_in).T
