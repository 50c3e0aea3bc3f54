"""Randomized invariant suites: inequality chains, entropy axioms, additivity, duality."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import channels as chn
from . import metrics, rand, zoo
from .information import channel_coherent_info, von_neumann_entropy
from .numerics import partial_trace
from .simulate import heralded_readout

SLACK = 1e-9


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    worst: float = 0.0
    notes: list = field(default_factory=list)

    def record(self, ok: bool, excess: float = 0.0, note: str | None = None):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if note:
                self.notes.append(note)
        self.worst = max(self.worst, excess)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _excess(report: metrics.BoundReport) -> float:
    return max(report.lower - report.value, report.value - report.upper, 0.0)


def fuchs_van_de_graaf_suite(trials: int, rng) -> SuiteResult:
    res = SuiteResult("fuchs-van-de-graaf")
    for k in range(trials):
        d = int(rng.integers(2, 5))
        # mix of pure/pure, pure/mixed and mixed/mixed pairs
        ranks = [(1, 1), (1, None), (None, None), (None, 2)][k % 4]
        rho = rand.random_state(d, rng, rank=ranks[0])
        sigma = rand.random_state(d, rng, rank=ranks[1])
        rep = metrics.check_fuchs_van_de_graaf(rho, sigma, SLACK)
        # the plain square-root lower bound must hold for every pair too
        f = metrics.fidelity(rho, sigma)
        plain_ok = 1 - np.sqrt(f) <= rep.value + SLACK
        res.record(not rep.violated and plain_ok, _excess(rep))
    return res


def channel_distance_suite(trials: int, rng) -> SuiteResult:
    res = SuiteResult("channel-distance-chains")
    for k in range(trials):
        d = int(rng.integers(2, 4))
        a = rand.random_channel(d, d, int(rng.integers(1, 4)), rng)
        if k % 2:
            b, unitary = zoo.unitary(rand.haar_unitary(d, rng)), True
        else:
            b, unitary = rand.random_channel(d, d, int(rng.integers(1, 4)), rng), False
        chain = metrics.check_entanglement_fidelity_chain(a, b, unitary_second=False, slack=SLACK)
        ok = not chain.violated
        excess = _excess(chain)
        if unitary:
            uchain = metrics.check_entanglement_fidelity_chain(a, b, unitary_second=True, slack=SLACK)
            ok &= not uchain.violated
            excess = max(excess, _excess(uchain))
        lo, hi = metrics.choi_diamond_bounds(a, b)
        sample = metrics.sampled_diamond_lower_bound(a, b, samples=50, seed=rng)
        ok &= lo <= hi + SLACK and sample <= hi + SLACK and lo <= 2 + SLACK
        res.record(ok, excess)
    return res


def entropy_axiom_suite(trials: int, rng) -> SuiteResult:
    res = SuiteResult("entropy-axioms")
    for k in range(trials):
        d = int(rng.integers(2, 5))
        rho = rand.random_state(d, rng, rank=int(rng.integers(1, d + 1)))
        h = von_neumann_entropy(rho)
        checks = []
        checks.append(abs(von_neumann_entropy(np.eye(d) / d) - np.log2(d)))
        checks.append(max(-h, h - np.log2(d), 0.0))
        v = rand.haar_isometry(d + int(rng.integers(0, 3)), d, rng)
        checks.append(abs(von_neumann_entropy(v @ rho @ v.conj().T) - h))
        sigma = rand.random_state(int(rng.integers(2, 4)), rng)
        checks.append(abs(von_neumann_entropy(np.kron(rho, sigma)) - h - von_neumann_entropy(sigma)))
        d2 = sigma.shape[0]
        joint = rand.random_state(d * d2, rng)
        ha = von_neumann_entropy(partial_trace(joint, (d, d2), 0))
        hb = von_neumann_entropy(partial_trace(joint, (d, d2), 1))
        checks.append(max(von_neumann_entropy(joint) - ha - hb, 0.0))
        unital = rand.random_mixed_unitary(d, int(rng.integers(1, 5)), rng)
        checks.append(max(h - von_neumann_entropy(unital(rho)), 0.0))
        worst = max(checks)
        res.record(worst <= SLACK, worst)
    return res


def additivity_suite(trials: int, rng) -> SuiteResult:
    res = SuiteResult("coherent-info-additivity")
    for _ in range(trials):
        a = rand.random_channel(int(rng.integers(2, 4)), None, int(rng.integers(1, 5)), rng)
        b = rand.random_channel(int(rng.integers(2, 4)), None, int(rng.integers(1, 5)), rng)
        err = abs(channel_coherent_info(chn.tensor(a, b)) - channel_coherent_info(a) - channel_coherent_info(b))
        res.record(err <= 1e-7, err)
    return res


def eb_suite(trials: int, rng) -> SuiteResult:
    res = SuiteResult("eb-nonpositivity")
    for _ in range(trials):
        d_in, d_out = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        ch = rand.random_eb(d_in, d_out, int(rng.integers(1, 5)), rng)
        i = channel_coherent_info(ch)
        ppt = chn.choi_min_pt_eigenvalue(ch) >= -SLACK
        res.record(i <= SLACK and ppt, max(i, 0.0))
    return res


def duality_suite(trials: int, rng) -> SuiteResult:
    res = SuiteResult("duality-round-trip")
    for _ in range(trials):
        d_in, d_out = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        rank = max(int(rng.integers(1, 5)), -(-d_in // d_out))
        ch = rand.random_channel(d_in, d_out, rank, rng)
        choi = chn.choi_of(ch)
        back = chn.channel_from_choi(choi)
        err = 0.0
        for i in range(d_in):
            for j in range(d_in):
                e = np.zeros((d_in, d_in), dtype=complex)
                e[i, j] = 1
                err = max(err, np.max(np.abs(chn.apply(back, e) - chn.apply(ch, e))))
        rho = rand.random_state(d_in, rng)
        h = rand.ginibre(d_out, d_out, rng)
        obs = h + h.conj().T
        val, herald = heralded_readout(choi, rho, obs)
        direct = float(np.trace(obs @ chn.apply(ch, rho)).real)
        err_read = abs(val - direct)
        err_herald = abs(herald - 1 / d_in)
        ok = err <= 1e-9 and err_read <= 1e-9 and err_herald <= 1e-10
        res.record(ok, max(err, err_read, err_herald))
    return res


SUITES = {
    "fuchs-van-de-graaf": fuchs_van_de_graaf_suite,
    "channel-distance-chains": channel_distance_suite,
    "entropy-axioms": entropy_axiom_suite,
    "coherent-info-additivity": additivity_suite,
    "eb-nonpositivity": eb_suite,
    "duality-round-trip": duality_suite,
}


def run_audit(seed: int = 0, trials: int = 50) -> list[SuiteResult]:
    """Run every suite with its own child generator so results are seed-stable."""
    seeds = np.random.SeedSequence(seed).spawn(len(SUITES))
    return [fn(trials, np.random.default_rng(s)) for fn, s in zip(SUITES.values(), seeds)]
