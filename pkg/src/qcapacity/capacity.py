"""Additive capacity quantities and their optimizers.

Everything is in bits. Classical quantities are evaluated for an orthogonal
pure-state encoding: a fixed orthonormal basis (computational by default)
whose input probabilities are optimized.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from .channels import KrausChannel, apply_extended, complementary
from .errors import DimensionMismatch, NoSignChange, OutOfRange
from .information import (
    channel_coherent_info,
    coherent_mutual_information,
)
from .numerics import entropy_of_weights, prob_vector
from .rand import ginibre, haar_unitary, rng_of
from .states import ebit
from . import zoo

ORTHO_TOL = 1e-10
UNITARY_TOL = 1e-9


@dataclass(frozen=True)
class Undefined:
    """Marker for a capacity formula whose precondition fails."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True, eq=False)
class OrtEnsemble:
    """Orthonormal pure-state encoding; ``basis`` columns are the code states."""

    basis: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim == 1:
            b = b[:, None]
        p = prob_vector(self.probs)
        if b.shape[1] != p.size:
            raise DimensionMismatch(f"{b.shape[1]} code states but {p.size} probabilities")
        gram = b.conj().T @ b
        if np.max(np.abs(gram - np.eye(b.shape[1]))) > ORTHO_TOL:
            raise ValueError("code states are not orthonormal")
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "probs", p)


@dataclass(frozen=True, eq=False)
class EaoEnsemble:
    """Ebits rotated by pairwise-orthogonal unitaries ``(U_i (x) 1)|omega>``."""

    unitaries: tuple
    probs: np.ndarray

    def __post_init__(self):
        us = tuple(np.asarray(u, dtype=complex) for u in self.unitaries)
        p = prob_vector(self.probs)
        if len(us) != p.size:
            raise DimensionMismatch(f"{len(us)} unitaries but {p.size} probabilities")
        d = us[0].shape[0]
        for u in us:
            if np.max(np.abs(u.conj().T @ u - np.eye(d))) > UNITARY_TOL:
                raise ValueError("ensemble operator is not unitary")
        stack = np.stack(us)
        gram = np.einsum("iab,jab->ij", stack.conj(), stack)
        if np.max(np.abs(gram - d * np.eye(len(us)))) > UNITARY_TOL:
            raise ValueError("ensemble unitaries are not pairwise orthogonal")
        object.__setattr__(self, "unitaries", us)
        object.__setattr__(self, "probs", p)

    @property
    def dim(self) -> int:
        return self.unitaries[0].shape[0]


def uniform_weyl_ensemble(d: int) -> EaoEnsemble:
    return EaoEnsemble(tuple(zoo.weyl_basis(d)), np.full(d * d, 1.0 / (d * d)))


@dataclass
class CapacityReport:
    value: float
    probs: np.ndarray | None = None
    basis: np.ndarray | None = None
    iterations: int = 0
    converged: bool = False
    gap: float = float("nan")
    extras: dict = field(default_factory=dict)


def _entropy(m: np.ndarray) -> float:
    return entropy_of_weights(np.linalg.eigvalsh((m + m.conj().T) / 2))


def _basis_or_default(basis, d: int) -> np.ndarray:
    if basis is None:
        return np.eye(d, dtype=complex)
    b = np.asarray(basis, dtype=complex)
    if b.shape[0] != d:
        raise DimensionMismatch(f"basis vectors have dimension {b.shape[0]}, channel input is {d}")
    return b


def _code_outputs(ch: KrausChannel, basis: np.ndarray) -> np.ndarray:
    # rho_i = Phi(|x_i><x_i|), stacked
    kx = np.einsum("kai,in->nka", ch.ops, basis)
    return np.einsum("nka,nkb->nab", kx, kx.conj())


def _holevo(p: np.ndarray, outs: np.ndarray, h_each: np.ndarray) -> float:
    avg = np.einsum("n,nab->ab", p, outs)
    return _entropy(avg) - float(p @ h_each)


# --- quantum ---------------------------------------------------------------


def quantum_capacity(ch: KrausChannel) -> float:
    return channel_coherent_info(ch)


def coherent_classical_capacity(ch: KrausChannel) -> float | Undefined:
    q = quantum_capacity(ch)
    if q < 0:
        return Undefined(f"quantum capacity {q:.6g} is negative")
    return 2.0 * q


# --- classical (orthogonal ensembles) --------------------------------------


def holevo_ort(ens: OrtEnsemble, ch: KrausChannel) -> float:
    if ens.basis.shape[0] != ch.d_in:
        raise DimensionMismatch("ensemble dimension does not match channel input")
    outs = _code_outputs(ch, ens.basis)
    h_each = np.array([_entropy(o) for o in outs])
    return _holevo(ens.probs, outs, h_each)


def _divergences(p: np.ndarray, outs: np.ndarray, neg_h: np.ndarray) -> np.ndarray:
    """``R(rho_i || sum_j p_j rho_j)`` for every code state."""
    avg = np.einsum("n,nab->ab", p, outs)
    w, v = np.linalg.eigh((avg + avg.conj().T) / 2)
    logw = np.log2(np.clip(w, 1e-300, None))
    logw[w <= 1e-300] = 0.0
    diag = np.einsum("aj,nab,bj->nj", v.conj(), outs, v).real
    return np.clip(neg_h - diag @ logw, 0.0, None)


def classical_capacity(
    ch: KrausChannel,
    basis=None,
    tol: float = 1e-9,
    max_iter: int = 100_000,
    record: bool = False,
) -> CapacityReport:
    """Maximize the orthogonal-ensemble Holevo quantity over input probabilities.

    Blahut-Arimoto iteration ``p_i <- p_i 2^{R_i} / Z`` with
    ``R_i = R(rho_i || rho_avg)``. The capacity lies in
    ``[value, value + gap]`` where ``gap = max_i R_i - value``; the run is
    converged once ``gap <= tol``.
    """
    b = _basis_or_default(basis, ch.d_in)
    outs = _code_outputs(ch, b)
    n = outs.shape[0]
    neg_h = -np.array([_entropy(o) for o in outs])
    p = np.full(n, 1.0 / n)
    history = []
    best_val, best_p, gap = -np.inf, p, np.inf
    it = 0
    for it in range(1, max_iter + 1):
        r = _divergences(p, outs, neg_h)
        val = float(p @ r)
        gap = float(r.max() - val)
        if record:
            history.append(val)
        if val >= best_val:
            best_val, best_p = val, p
        if gap <= tol:
            break
        logp = np.log2(np.clip(p, 1e-300, None)) + (r - r.max())
        p = np.exp2(logp - logp.max())
        p /= p.sum()
    report = CapacityReport(
        value=max(best_val, 0.0) if best_val > -1e-12 else best_val,
        probs=best_p,
        basis=b,
        iterations=it,
        converged=gap <= tol,
        gap=gap,
    )
    if record:
        report.extras["history"] = np.array(history)
    return report


def classical_capacity_basis_search(
    ch: KrausChannel, restarts: int = 8, tol: float = 1e-9, seed=0
) -> CapacityReport:
    """Best orthogonal-ensemble capacity over the computational basis and random bases."""
    rng = rng_of(seed)
    bases = [np.eye(ch.d_in, dtype=complex)] + [haar_unitary(ch.d_in, rng) for _ in range(restarts)]
    best = None
    for k, b in enumerate(bases):
        rep = classical_capacity(ch, b, tol=tol)
        if best is None or rep.value > best.value:
            best = rep
            best.extras["basis_index"] = k
    best.extras["restarts"] = restarts
    return best


# --- private ---------------------------------------------------------------


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    k = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / k > 0)[0][-1]
    return np.clip(v - css[rho] / (rho + 1), 0.0, None)


def _ascend_simplex(
    f: Callable[[np.ndarray], float],
    p0: np.ndarray,
    fd_step: float = 1e-6,
    tol: float = 1e-12,
    max_iter: int = 2000,
) -> tuple[np.ndarray, float, int, float]:
    """Projected gradient ascent with central differences and step halving."""
    p, fp = p0, f(p0)
    step, last_gain = 1.0, np.inf
    n = p.size
    eye = np.eye(n)
    it = 0
    for it in range(1, max_iter + 1):
        g = np.array([(f(p + fd_step * eye[i]) - f(p - fd_step * eye[i])) / (2 * fd_step) for i in range(n)])
        g -= g.mean()
        moved = False
        while step > 1e-14:
            q = project_simplex(p + step * g)
            fq = f(q)
            if fq > fp:
                moved = True
                break
            step *= 0.5
        if not moved:
            last_gain = 0.0
            break
        last_gain = fq - fp
        p, fp = q, fq
        step = min(step * 2.0, 1e3)
        if last_gain <= tol:
            break
    return p, fp, it, last_gain


def _holevo_extended(p: np.ndarray, outs: np.ndarray, h_each: np.ndarray) -> float:
    # defined slightly off the simplex so central differences work at the boundary
    avg = np.einsum("n,nab->ab", p, outs)
    w = np.clip(np.linalg.eigvalsh((avg + avg.conj().T) / 2), 0.0, None)
    w = w[w > 1e-300]
    return float(-np.sum(w * np.log2(w))) - float(p @ h_each)


def private_objective(ch: KrausChannel, basis=None) -> Callable[[np.ndarray], float]:
    """``p -> chi(p, Phi) - chi(p, Phi^c)`` for the given orthonormal code basis."""
    b = _basis_or_default(basis, ch.d_in)
    outs = _code_outputs(ch, b)
    env = _code_outputs(complementary(ch), b)
    h = np.array([_entropy(o) for o in outs])
    he = np.array([_entropy(o) for o in env])

    def f(p):
        return _holevo_extended(p, outs, h) - _holevo_extended(p, env, he)

    return f


def private_capacity(
    ch: KrausChannel,
    basis=None,
    restarts: int = 32,
    tol: float = 1e-9,
    seed=0,
    fd_step: float = 1e-6,
) -> CapacityReport:
    """Maximize ``chi(p, Phi) - chi(p, Phi^c)`` over the simplex.

    Multistart projected-gradient ascent from the uniform point, every vertex
    and ``restarts`` Dirichlet(1) draws. ``gap`` is the last accepted gain of
    the winning run, a convergence indicator rather than a certified bound.
    """
    b = _basis_or_default(basis, ch.d_in)
    f = private_objective(ch, b)
    n = b.shape[1]
    rng = rng_of(seed)
    starts = [np.full(n, 1.0 / n)] + list(np.eye(n)) + list(rng.dirichlet(np.ones(n), size=restarts))
    best = None
    total = 0
    for k, s in enumerate(starts):
        p, val, it, gain = _ascend_simplex(f, s, fd_step=fd_step, tol=tol * 1e-3)
        total += it
        if best is None or val > best[1]:
            best = (p, val, gain, k)
    p, val, gain, k = best
    return CapacityReport(
        value=val,
        probs=p,
        basis=b,
        iterations=total,
        converged=gain <= tol,
        gap=gain,
        extras={"start_index": k, "restarts": restarts},
    )


# --- entanglement-assisted -------------------------------------------------


def holevo_eao(ens: EaoEnsemble, ch: KrausChannel) -> float:
    d = ch.d_in
    if ens.dim != d:
        raise DimensionMismatch("ensemble unitaries do not match channel input")
    om = ebit(d)
    avg = np.zeros((ch.d_out * d, ch.d_out * d), dtype=complex)
    mean_h = 0.0
    for p, u in zip(ens.probs, ens.unitaries):
        if p == 0:
            continue
        ul = np.kron(u, np.eye(d))
        out = apply_extended(ch, ul @ om @ ul.conj().T, d)
        avg += p * out
        mean_h += p * _entropy(out)
    return _entropy(avg) - mean_h


def eao_classical_capacity(ch: KrausChannel) -> float:
    return float(np.log2(ch.d_in)) + channel_coherent_info(ch)


def eao_quantum_capacity(ch: KrausChannel) -> float:
    return 0.5 * eao_classical_capacity(ch)


def ea_mutual_information(rho, ch: KrausChannel) -> float:
    return coherent_mutual_information(rho, ch)


def _state_from_params(x: np.ndarray, d: int) -> np.ndarray:
    a = (x[: d * d] + 1j * x[d * d :]).reshape(d, d)
    r = a @ a.conj().T
    return r / np.trace(r).real


def ea_classical_capacity_search(
    ch: KrausChannel, restarts: int = 8, tol: float = 1e-9, seed=0
) -> CapacityReport:
    """Best-effort maximum of ``J(rho, Phi)`` over input states.

    ``rho = A A^dagger / tr(A A^dagger)`` is optimized with L-BFGS from the
    maximally mixed state and ``restarts`` random Ginibre starts.
    ``extras["gap_to_eao"]`` is the excess over ``log d + I(Phi)``.
    """
    d = ch.d_in
    rng = rng_of(seed)

    def neg_j(x):
        return -coherent_mutual_information(_state_from_params(x, d), ch)

    eye = np.eye(d).reshape(-1)
    starts = [np.concatenate([eye, np.zeros(d * d)])]
    for _ in range(restarts):
        g = ginibre(d, d, rng).reshape(-1)
        starts.append(np.concatenate([g.real, g.imag]))
    best_val, best_rho, iters, conv = -np.inf, None, 0, False
    for x0 in starts:
        v0 = -neg_j(x0)
        res = minimize(neg_j, x0, method="L-BFGS-B", options={"ftol": tol, "gtol": 1e-10, "maxiter": 2000})
        iters += int(res.nit)
        x, v = (res.x, -float(res.fun)) if -res.fun >= v0 else (x0, v0)
        if v > best_val:
            best_val, best_rho, conv = v, _state_from_params(x, d), bool(res.success)
    eao = eao_classical_capacity(ch)
    return CapacityReport(
        value=best_val,
        probs=np.clip(np.linalg.eigvalsh(best_rho)[::-1], 0.0, None),
        basis=None,
        iterations=iters,
        converged=conv,
        gap=float("nan"),
        extras={"state": best_rho, "gap_to_eao": best_val - eao, "eao_value": eao},
    )


# --- closed forms ----------------------------------------------------------


def _h(*w: float) -> float:
    return entropy_of_weights(np.array(w, dtype=float), cutoff=0.0)


def cf_unital(ch: KrausChannel) -> float:
    """``log d_out - H(p)`` with ``p_i = tr(K_i^dagger K_i)/d`` in canonical Kraus form."""
    from .channels import canonical, is_unital

    if not is_unital(ch):
        raise ValueError("channel is not unital")
    ops = canonical(ch).ops
    p = np.einsum("kai,kai->k", ops.conj(), ops).real / ch.d_in
    return float(np.log2(ch.d_out)) - entropy_of_weights(p, cutoff=0.0)


def cf_pauli(probs: Sequence[float]) -> float:
    q = prob_vector(probs)
    return 0.5 * float(np.log2(q.size)) - entropy_of_weights(q, cutoff=0.0)


def cf_depolarizing(d: int, p: float) -> float:
    return float(np.log2(d)) - _h(1 - p, *([p / (d * d - 1)] * (d * d - 1)))


def cf_erasure(d: int, p: float) -> float:
    if not 0 <= p <= 1:
        raise OutOfRange(f"p={p}")
    return (1 - 2 * p) * float(np.log2(d))


def cf_replacement(d: int) -> float:
    return -float(np.log2(d))


def cf_schur(unitaries: Sequence) -> float:
    """``log d - H(sum_i |psi_i><psi_i| / d)`` with ``psi_i = U_i|0>``."""
    psis = np.stack([np.asarray(u, dtype=complex)[:, 0] for u in unitaries])
    d = len(unitaries)
    rho_e = psis.T @ psis.conj() / d
    return float(np.log2(d)) - _entropy(rho_e)


def cf_ad_qudit(gammas: Sequence[float]) -> float:
    g = np.asarray(gammas, dtype=float)
    d = g.size + 1
    p = np.empty(d)
    p[0] = 1 + g[0]
    p[1:-1] = 1 + g[1:] - g[:-1]
    p[-1] = 1 - g[-1]
    q = np.append(g, d - g.sum())
    return entropy_of_weights(p / d, cutoff=0.0) - entropy_of_weights(q / d, cutoff=0.0)


def cf_ad_qubit(gamma: float) -> float:
    return _h((1 + gamma) / 2, (1 - gamma) / 2) - _h(gamma / 2, 1 - gamma / 2)


def cf_qubit_extreme(a: float, b: float) -> float:
    ca2, sa2, sb2 = np.cos(a) ** 2, np.sin(a) ** 2, np.sin(b) ** 2
    x = (ca2 + sb2) / 2
    y = (sa2 + sb2) / 2
    return _h(x, 1 - x) - _h(y, 1 - y)


# --- thresholds ------------------------------------------------------------


@dataclass(frozen=True)
class Threshold:
    value: float
    bracket: tuple[float, float]
    residual: float
    iterations: int


def zero_capacity_threshold(
    family: Callable[[float], KrausChannel],
    lo: float,
    hi: float,
    tol: float = 1e-9,
    max_iter: int = 200,
    quantity: Callable[[KrausChannel], float] = quantum_capacity,
) -> Threshold:
    """Bisection for the parameter where ``quantity(family(x))`` vanishes."""
    f_lo, f_hi = quantity(family(lo)), quantity(family(hi))
    if f_lo == 0:
        return Threshold(lo, (lo, lo), 0.0, 0)
    if f_hi == 0:
        return Threshold(hi, (hi, hi), 0.0, 0)
    if np.sign(f_lo) == np.sign(f_hi):
        raise NoSignChange(f"I({lo})={f_lo:.3g} and I({hi})={f_hi:.3g} have the same sign")
    mid, f_mid = lo, f_lo
    it = 0
    for it in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        f_mid = quantity(family(mid))
        if abs(f_mid) <= tol or hi - lo <= 1e-15:
            break
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return Threshold(mid, (lo, hi), abs(f_mid), it)


def depolarizing_threshold(d: int, tol: float = 1e-9) -> Threshold:
    return zero_capacity_threshold(lambda p: zoo.depolarizing(d, p), 0.0, 0.5, tol=tol)
