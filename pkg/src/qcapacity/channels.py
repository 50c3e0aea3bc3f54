"""Channel representations, conversions and classification.

Choi layout: output factor first, reference factor second, so that

    choi = sum_ij Phi(|i><j|) (x) |i><j| / d_in

and the reference marginal is the maximally mixed state.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidChannel, InvalidChoi
from .numerics import as_matrix, partial_trace, partial_transpose
from .states import STATE_TOL, check_state, maximally_mixed

COMPLETENESS_TOL = 1e-9
CHOI_RANK_TOL = 1e-10
EXTREME_RTOL = 1e-8
COMMUTE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A channel ``rho -> sum_i K_i rho K_i^dagger``.

    ``ops`` has shape ``(r, d_out, d_in)``. The array is made read-only so the
    channel can be shared freely.
    """

    ops: np.ndarray

    def __post_init__(self):
        ops = np.array(self.ops, dtype=complex)
        if ops.ndim == 2:
            ops = ops[None]
        if ops.ndim != 3 or ops.shape[0] == 0:
            raise InvalidChannel(f"Kraus stack must have shape (r, d_out, d_in), got {ops.shape}")
        ops.setflags(write=False)
        object.__setattr__(self, "ops", ops)
        res = self.completeness_residual()
        if res > COMPLETENESS_TOL:
            raise InvalidChannel(
                f"completeness violated: max |sum K^dagger K - 1| = {res:.3e} > {COMPLETENESS_TOL:g}"
            )

    @classmethod
    def from_kraus(cls, kraus: Iterable) -> "KrausChannel":
        mats = [as_matrix(k) for k in kraus]
        shapes = {m.shape for m in mats}
        if len(shapes) != 1:
            raise InvalidChannel(f"Kraus operators have inconsistent shapes {sorted(shapes)}")
        return cls(np.stack(mats))

    @property
    def d_in(self) -> int:
        return self.ops.shape[2]

    @property
    def d_out(self) -> int:
        return self.ops.shape[1]

    @property
    def n_kraus(self) -> int:
        return self.ops.shape[0]

    @property
    def kraus(self) -> list[np.ndarray]:
        return list(self.ops)

    def completeness_residual(self) -> float:
        s = np.einsum("kai,kaj->ij", self.ops.conj(), self.ops)
        return float(np.max(np.abs(s - np.eye(self.ops.shape[2]))))

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)

    def __repr__(self) -> str:
        return f"KrausChannel(d_in={self.d_in}, d_out={self.d_out}, n_kraus={self.n_kraus})"


@dataclass(frozen=True, eq=False)
class ChoiState:
    """Choi state of a channel; ``mat`` is ``(d_out*d_in) x (d_out*d_in)``."""

    mat: np.ndarray
    d_in: int
    d_out: int

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        n = self.d_in * self.d_out
        if m.shape != (n, n):
            raise InvalidChoi(f"Choi matrix shape {m.shape} does not match d_out*d_in = {n}")
        try:
            check_state(m, tol=STATE_TOL)
        except Exception as exc:
            raise InvalidChoi(f"Choi matrix is not a state: {exc}") from exc
        res = self.marginal_residual(m)
        if res > 1e-9:
            raise InvalidChoi(f"reference marginal differs from maximally mixed by {res:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    def marginal_residual(self, m=None) -> float:
        m = self.mat if m is None else m
        ref = partial_trace(m, (self.d_out, self.d_in), keep=1)
        return float(np.max(np.abs(ref - maximally_mixed(self.d_in))))

    @property
    def rank(self) -> int:
        return int(np.sum(np.linalg.eigvalsh(self.mat) > CHOI_RANK_TOL))


@dataclass(frozen=True)
class ChannelClass:
    unital: bool
    trace_preserving: bool
    extreme: bool
    ppt_choi: bool
    entanglement_breaking_witnessed: bool
    qc: bool
    cq: bool
    rank: int


def _check_input(ch: KrausChannel, rho, dim: int) -> np.ndarray:
    m = as_matrix(rho)
    if m.shape != (dim, dim):
        raise DimensionMismatch(f"input of shape {m.shape}, channel expects {dim}x{dim}")
    return m


def apply(ch: KrausChannel, rho) -> np.ndarray:
    """Apply the channel to any ``d_in x d_in`` operator (linear extension)."""
    m = _check_input(ch, rho, ch.d_in)
    return np.einsum("kai,ij,kbj->ab", ch.ops, m, ch.ops.conj())


def apply_adjoint(ch: KrausChannel, obs) -> np.ndarray:
    """Heisenberg picture ``O -> sum K^dagger O K``."""
    m = _check_input(ch, obs, ch.d_out)
    return np.einsum("kai,ab,kbj->ij", ch.ops.conj(), m, ch.ops)


def apply_extended(ch: KrausChannel, rho_joint, ref_dim: int) -> np.ndarray:
    """``(Phi (x) 1)(rho)`` with the channel acting on the first factor."""
    m = _check_input(ch, rho_joint, ch.d_in * ref_dim)
    t = m.reshape(ch.d_in, ref_dim, ch.d_in, ref_dim)
    out = np.einsum("kai,irjs,kbj->arbs", ch.ops, t, ch.ops.conj())
    return out.reshape(ch.d_out * ref_dim, ch.d_out * ref_dim)


def choi_matrix(ch: KrausChannel) -> np.ndarray:
    vecs = ch.ops.reshape(ch.n_kraus, -1)
    return np.einsum("ka,kb->ab", vecs, vecs.conj()) / ch.d_in


def choi_of(ch: KrausChannel) -> ChoiState:
    return ChoiState(choi_matrix(ch), ch.d_in, ch.d_out)


def kraus_from_choi_matrix(mat: np.ndarray, d_in: int, d_out: int) -> np.ndarray:
    w, v = np.linalg.eigh((mat + mat.conj().T) / 2)
    keep = w > CHOI_RANK_TOL
    w, v = w[keep][::-1], v[:, keep][:, ::-1]
    ops = (v * np.sqrt(d_in * w)).T.reshape(-1, d_out, d_in)
    return ops


def channel_from_choi(choi: ChoiState) -> KrausChannel:
    """Canonical Kraus operators: rescaled Choi eigenvectors, largest weight first."""
    res = choi.marginal_residual()
    if res > 1e-9:
        raise InvalidChoi(f"reference marginal residual {res:.3e}")
    return KrausChannel(kraus_from_choi_matrix(choi.mat, choi.d_in, choi.d_out))


def canonical(ch: KrausChannel) -> KrausChannel:
    """Same channel in the orthogonal Kraus form ``tr(K_i^dagger K_j) ~ delta_ij``."""
    return KrausChannel(kraus_from_choi_matrix(choi_matrix(ch), ch.d_in, ch.d_out))


def choi_apply(choi: ChoiState, rho) -> np.ndarray:
    """Read the channel action off its Choi state: ``d tr_ref[choi (1 (x) rho^T)]``."""
    m = as_matrix(rho)
    if m.shape != (choi.d_in, choi.d_in):
        raise DimensionMismatch(f"input of shape {m.shape}, Choi expects {choi.d_in}x{choi.d_in}")
    joint = choi.mat @ np.kron(np.eye(choi.d_out), m.T)
    return choi.d_in * partial_trace(joint, (choi.d_out, choi.d_in), keep=0)


def complementary(ch: KrausChannel) -> KrausChannel:
    """Channel to the environment of the dilation ``V = sum_i |i> (x) K_i``.

    The output is ``sum_ij tr(rho K_i^dagger K_j) |j><i|`` on an
    ``n_kraus``-dimensional environment.
    """
    # L_a[i, :] = K_i[a, :]
    return KrausChannel(np.transpose(ch.ops, (1, 0, 2)))


def environment_state(ch: KrausChannel, rho) -> np.ndarray:
    m = _check_input(ch, rho, ch.d_in)
    g = np.einsum("kai,ij,laj->kl", ch.ops, m, ch.ops.conj())
    return g


def dilation(ch: KrausChannel) -> np.ndarray:
    """Isometry ``V = sum_i |i> (x) K_i`` of shape ``(r*d_out, d_in)``, environment first."""
    return ch.ops.reshape(ch.n_kraus * ch.d_out, ch.d_in)


def compose(outer: KrausChannel, inner: KrausChannel) -> KrausChannel:
    """``outer o inner``."""
    if outer.d_in != inner.d_out:
        raise DimensionMismatch(f"cannot compose: {outer.d_in} != {inner.d_out}")
    ops = np.einsum("kab,lbi->klai", outer.ops, inner.ops)
    return KrausChannel(ops.reshape(-1, outer.d_out, inner.d_in))


def tensor(a: KrausChannel, b: KrausChannel) -> KrausChannel:
    ops = np.einsum("kai,lbj->klabij", a.ops, b.ops)
    return KrausChannel(ops.reshape(a.n_kraus * b.n_kraus, a.d_out * b.d_out, a.d_in * b.d_in))


def hermitian_basis(d: int) -> list[np.ndarray]:
    """Orthogonal Hermitian operator basis built from matrix units (d^2 elements)."""
    out = []
    for i in range(d):
        for j in range(d):
            m = np.zeros((d, d), dtype=complex)
            if i == j:
                m[i, i] = 1
            elif i < j:
                m[i, j] = m[j, i] = 1
            else:
                m[i, j], m[j, i] = 1j, -1j
            out.append(m)
    return out


def _pairwise_commute(mats: Sequence[np.ndarray], tol: float) -> bool:
    a = np.stack(mats)
    scale = max(1.0, float(np.max(np.abs(a))))
    comm = np.einsum("iab,jbc->ijac", a, a) - np.einsum("jab,ibc->ijac", a, a)
    return bool(np.max(np.abs(comm)) <= tol * scale * scale)


def is_unital(ch: KrausChannel, tol: float = 1e-9) -> bool:
    out = apply(ch, maximally_mixed(ch.d_in))
    return bool(np.max(np.abs(out - maximally_mixed(ch.d_out))) <= tol)


def is_extreme(ch: KrausChannel, rtol: float = EXTREME_RTOL) -> bool:
    """Linear independence of ``{K_i^dagger K_j}`` for a minimal Kraus set."""
    ops = canonical(ch).ops
    r = ops.shape[0]
    if r * r > ch.d_in * ch.d_in:
        return False
    prods = np.einsum("kai,laj->klij", ops.conj(), ops).reshape(r * r, -1)
    s = np.linalg.svd(prods, compute_uv=False)
    return bool(np.sum(s > rtol * s[0]) == r * r)


def choi_min_pt_eigenvalue(ch: KrausChannel) -> float:
    pt = partial_transpose(choi_matrix(ch), (ch.d_out, ch.d_in), which=1)
    return float(np.linalg.eigvalsh((pt + pt.conj().T) / 2)[0])


def is_qc(ch: KrausChannel, tol: float = COMMUTE_TOL) -> bool:
    """All outputs commute, i.e. the channel ends with a measurement in a fixed basis."""
    return _pairwise_commute([apply(ch, h) for h in hermitian_basis(ch.d_in)], tol)


def is_cq(ch: KrausChannel, tol: float = COMMUTE_TOL) -> bool:
    """All Heisenberg-picture observables commute, i.e. the channel starts by measuring."""
    return _pairwise_commute([apply_adjoint(ch, h) for h in hermitian_basis(ch.d_out)], tol)


def _all_rank_one(ops: np.ndarray, rtol: float) -> bool:
    for k in ops:
        s = np.linalg.svd(k, compute_uv=False)
        if len(s) > 1 and s[1] > rtol * s[0]:
            return False
    return True


def has_rank_one_kraus(ch: KrausChannel, rtol: float = 1e-8) -> bool:
    """True when the given or the canonical Kraus set consists of rank-one operators."""
    return _all_rank_one(ch.ops, rtol) or _all_rank_one(canonical(ch).ops, rtol)


def classify(ch: KrausChannel) -> ChannelClass:
    qc = is_qc(ch)
    cq = is_cq(ch)
    # QC and CQ channels always admit a rank-one Kraus form even when the Choi
    # spectrum is degenerate and the eigensolver mixes the rank-one vectors.
    eb = qc or cq or has_rank_one_kraus(ch)
    return ChannelClass(
        unital=is_unital(ch),
        trace_preserving=ch.completeness_residual() <= COMPLETENESS_TOL,
        extreme=is_extreme(ch),
        ppt_choi=choi_min_pt_eigenvalue(ch) >= -1e-9,
        entanglement_breaking_witnessed=eb,
        qc=qc,
        cq=cq,
        rank=choi_of(ch).rank,
    )
