import numpy as np
import pytest

from qcapacity import capacity as cap
from qcapacity import channels as chn
from qcapacity import rand, zoo
from qcapacity.errors import NoSignChange
from qcapacity.numerics import binary_entropy as h
from qcapacity.states import basis_projector, maximally_mixed

from oracles import classical_blahut_arimoto, holevo_of_states, private_grid_qubit


def z_outputs(ch):
    return [ch(basis_projector(i, ch.d_in)) for i in range(ch.d_in)]


# --- quantum ---------------------------------------------------------------


@pytest.mark.parametrize("g", [0.0, 0.2, 0.5, 0.77, 1.0])
def test_quantum_capacity_ad(g):
    assert cap.quantum_capacity(zoo.ad_qubit(g)) == pytest.approx(h((1 + g) / 2) - h(g / 2), abs=1e-12)


def test_quantum_capacity_examples(rng):
    assert cap.quantum_capacity(zoo.isometry(rand.haar_isometry(4, 2, rng))) == pytest.approx(1.0)
    assert cap.quantum_capacity(zoo.erasure(3, 0.5)) == pytest.approx(0.0, abs=1e-12)


def test_coherent_classical_capacity():
    assert cap.coherent_classical_capacity(zoo.identity(2)) == pytest.approx(2.0)
    assert cap.coherent_classical_capacity(zoo.ad_qubit(0.5)) == pytest.approx(0.0, abs=1e-12)
    # AD 0.9: h(0.95) - h(0.45) < 0
    assert h(0.95) - h(0.45) < 0
    marker = cap.coherent_classical_capacity(zoo.ad_qubit(0.9))
    assert isinstance(marker, cap.Undefined) and not marker


# --- orthogonal-ensemble Holevo quantity -------------------------------------


def test_holevo_ort_examples():
    d = 3
    uni = cap.OrtEnsemble(np.eye(d), np.full(d, 1 / d))
    assert cap.holevo_ort(uni, zoo.identity(d)) == pytest.approx(np.log2(d))
    assert cap.holevo_ort(uni, zoo.replacement(d, maximally_mixed(2))) == pytest.approx(0.0, abs=1e-12)
    g = 0.3
    ens = cap.OrtEnsemble(np.eye(2), [0.5, 0.5])
    # outputs |0><0| and diag(g, 1-g); average diag((1+g)/2, (1-g)/2)
    expected = h((1 + g) / 2) - 0.5 * h(g)
    assert cap.holevo_ort(ens, zoo.ad_qubit(g)) == pytest.approx(expected, abs=1e-12)


def test_ort_ensemble_validation():
    with pytest.raises(ValueError):
        cap.OrtEnsemble(np.array([[1, 1], [0, 1]]), [0.5, 0.5])


def test_holevo_ort_bounds(rng):
    for _ in range(20):
        ch = rand.random_channel(3, 3, int(rng.integers(1, 5)), rng)
        ens = cap.OrtEnsemble(rand.haar_unitary(3, rng)[:, :2], rng.dirichlet([1, 1]))
        v = cap.holevo_ort(ens, ch)
        assert -1e-10 <= v <= 1 + 1e-10


# --- classical capacity --------------------------------------------------------


def test_classical_capacity_bsc():
    q = 0.1
    w = np.array([[1 - q, q], [q, 1 - q]])
    rep = cap.classical_capacity(zoo.simulate_classical(w))
    assert rep.value == pytest.approx(classical_blahut_arimoto(w), abs=1e-9)
    assert rep.value == pytest.approx(1 - h(q), abs=1e-9)
    assert rep.value == pytest.approx(0.531, abs=1e-3)
    assert rep.converged and rep.gap <= 1e-9


@pytest.mark.parametrize("d", [2, 3, 4])
def test_classical_capacity_identity(d):
    rep = cap.classical_capacity(zoo.identity(d))
    assert rep.value == pytest.approx(np.log2(d), abs=1e-12)
    assert np.allclose(rep.probs, 1 / d)


def test_classical_capacity_dephasing():
    assert cap.classical_capacity(zoo.completely_dephasing(2)).value == pytest.approx(1.0)


def test_classical_capacity_matches_classical_oracle(rng):
    for _ in range(5):
        w = rand.random_stochastic(3, 3, rng)
        rep = cap.classical_capacity(zoo.simulate_classical(w))
        assert rep.value == pytest.approx(classical_blahut_arimoto(w), abs=1e-8)


def test_blahut_arimoto_monotone(rng):
    for _ in range(5):
        ch = rand.random_channel(3, 2, 3, rng)
        rep = cap.classical_capacity(ch, record=True)
        hist = rep.extras["history"]
        assert np.all(np.diff(hist) >= -1e-12)
        assert rep.converged and rep.gap <= 1e-9


def test_classical_capacity_report_bounds(rng):
    ch = rand.random_channel(2, 2, 2, rng)
    rep = cap.classical_capacity(ch)
    # no probability vector beats value + gap
    for p in rng.dirichlet([1, 1], size=200):
        assert holevo_of_states(p, z_outputs(ch)) <= rep.value + rep.gap + 1e-12


def test_basis_search(rng):
    u = rand.haar_unitary(3, rng)
    assert cap.classical_capacity_basis_search(zoo.unitary(u), restarts=3, seed=1).value == pytest.approx(np.log2(3))
    v = rand.haar_unitary(2, rng)
    ch = zoo.qc([np.outer(v[:, j], v[:, j].conj()) for j in range(2)])
    aligned = cap.classical_capacity(ch, basis=v).value
    found = cap.classical_capacity_basis_search(ch, restarts=30, seed=2).value
    assert found <= aligned + 1e-6 and aligned == pytest.approx(1.0)
    for _ in range(3):
        ch = rand.random_channel(2, 2, 2, rng)
        assert cap.classical_capacity_basis_search(ch, 4, seed=3).value >= cap.classical_capacity(ch).value - 1e-12


def test_basis_search_deterministic(rng):
    ch = rand.random_channel(2, 2, 3, rng)
    a = cap.classical_capacity_basis_search(ch, 4, seed=99)
    b = cap.classical_capacity_basis_search(ch, 4, seed=99)
    assert a.value == b.value and np.array_equal(a.basis, b.basis)


def test_holevo_ort_product_additivity(rng):
    a, b = rand.random_channel(2, 2, 2, rng), rand.random_channel(2, 3, 2, rng)
    ua, ub = rand.haar_unitary(2, rng), rand.haar_unitary(2, rng)
    pa, pb = rng.dirichlet([1, 1]), rng.dirichlet([1, 1])
    joint = cap.OrtEnsemble(np.kron(ua, ub), np.kron(pa, pb))
    lhs = cap.holevo_ort(joint, chn.tensor(a, b))
    rhs = cap.holevo_ort(cap.OrtEnsemble(ua, pa), a) + cap.holevo_ort(cap.OrtEnsemble(ub, pb), b)
    assert lhs == pytest.approx(rhs, abs=1e-10)
    tol = 1e-9
    full = cap.classical_capacity(chn.tensor(a, b), basis=np.kron(ua, ub), tol=tol).value
    parts = cap.classical_capacity(a, ua, tol=tol).value + cap.classical_capacity(b, ub, tol=tol).value
    assert full == pytest.approx(parts, abs=2 * tol + 1e-10)


# --- private -------------------------------------------------------------


def test_private_identity():
    assert cap.private_capacity(zoo.identity(2)).value == pytest.approx(1.0, abs=1e-8)


def test_private_dephasing_bounded():
    ch = zoo.completely_dephasing(2)
    p = cap.private_capacity(ch).value
    assert -1e-8 <= p <= cap.classical_capacity(ch).value + 1e-8


def test_private_ad_half_against_grid():
    ch = zoo.ad_qubit(0.5)
    rep = cap.private_capacity(ch)
    grid, _ = private_grid_qubit(z_outputs(ch), z_outputs(chn.complementary(ch)))
    assert rep.value == pytest.approx(grid, abs=1e-8)
    assert -1e-8 <= rep.value <= cap.classical_capacity(ch).value + 1e-8


def test_private_deterministic(rng):
    ch = rand.random_channel(2, 2, 2, rng)
    a, b = cap.private_capacity(ch, seed=5), cap.private_capacity(ch, seed=5)
    assert a.value == b.value and np.array_equal(a.probs, b.probs)


def test_project_simplex(rng):
    for _ in range(50):
        v = rng.normal(size=4) * 3
        p = cap.project_simplex(v)
        assert p.min() >= 0 and p.sum() == pytest.approx(1.0)
        # optimality: no random simplex point is closer
        for q in rng.dirichlet(np.ones(4), size=20):
            assert np.linalg.norm(v - p) <= np.linalg.norm(v - q) + 1e-12


# --- entanglement-assisted ----------------------------------------------------


def test_holevo_eao_examples(rng):
    assert cap.holevo_eao(cap.uniform_weyl_ensemble(2), zoo.identity(2)) == pytest.approx(2.0)
    single = cap.EaoEnsemble((rand.haar_unitary(2, rng),), [1.0])
    assert cap.holevo_eao(single, rand.random_channel(2, 2, 3, rng)) == pytest.approx(0.0, abs=1e-10)
    for d in (2, 3):
        ch = rand.random_channel(d, d, 3, rng)
        v = cap.holevo_eao(cap.uniform_weyl_ensemble(d), ch)
        assert v == pytest.approx(np.log2(d) + cap.quantum_capacity(ch), abs=1e-8)
        assert 0 <= v <= 2 * np.log2(d) + 1e-10


def test_eao_ensemble_validation(rng):
    with pytest.raises(ValueError):
        cap.EaoEnsemble((np.eye(2), np.eye(2)), [0.5, 0.5])


def test_eao_capacities(rng):
    assert cap.eao_classical_capacity(zoo.identity(2)) == pytest.approx(2.0)
    assert cap.eao_classical_capacity(zoo.replacement(2, basis_projector(0, 2))) == pytest.approx(0.0, abs=1e-12)
    assert cap.eao_classical_capacity(zoo.completely_dephasing(3)) == pytest.approx(np.log2(3), abs=1e-9)
    assert cap.eao_quantum_capacity(zoo.identity(2)) == pytest.approx(1.0)
    assert cap.eao_quantum_capacity(zoo.replacement(2, maximally_mixed(2))) == pytest.approx(0.0, abs=1e-12)
    assert cap.eao_quantum_capacity(zoo.ad_qubit(0.5)) == pytest.approx(0.5, abs=1e-12)
    for _ in range(10):
        ch = rand.random_channel(2, 3, int(rng.integers(1, 6)), rng)
        assert cap.eao_classical_capacity(ch) >= -1e-9
        assert cap.eao_quantum_capacity(ch) >= cap.quantum_capacity(ch) - 1e-9


def test_ea_mutual_information_cq(rng):
    states = [rand.random_state(2, rng) for _ in range(3)]
    ch = zoo.cq(states)
    p = rng.dirichlet(np.ones(3))
    assert cap.ea_mutual_information(np.diag(p).astype(complex), ch) == pytest.approx(holevo_of_states(p, states), abs=1e-10)
    assert cap.ea_mutual_information(maximally_mixed(3), ch) == pytest.approx(cap.eao_classical_capacity(ch), abs=1e-12)
    psi = rand.random_pure(3, rng)
    from qcapacity.information import coherent_information

    assert cap.ea_mutual_information(psi, ch) == pytest.approx(coherent_information(psi, ch), abs=1e-9)


def test_ea_search_identity():
    rep = cap.ea_classical_capacity_search(zoo.identity(2), restarts=2)
    assert rep.value == pytest.approx(2.0, abs=1e-8)


def test_ea_search_cq_equals_classical_capacity_of_source(rng):
    psi = rand.random_channel(2, 2, 2, rng)
    states = z_outputs(psi)
    rep = cap.ea_classical_capacity_search(zoo.cq(states), restarts=4, seed=1)
    assert rep.value == pytest.approx(cap.classical_capacity(psi).value, abs=2e-3)
    assert rep.extras["gap_to_eao"] >= -1e-9


def test_ea_search_unital_gap(rng):
    ch = rand.random_mixed_unitary(2, 3, rng)
    rep = cap.ea_classical_capacity_search(ch, restarts=2, seed=4)
    assert rep.extras["gap_to_eao"] >= -1e-6


# --- ordering chains -----------------------------------------------------


def test_capacity_ordering_unital_and_ad(rng):
    chans = [zoo.ad_qubit(g) for g in np.linspace(0, 1, 21)]
    chans += [rand.random_mixed_unitary(int(rng.integers(2, 4)), int(rng.integers(1, 4)), rng) for _ in range(10)]
    for ch in chans:
        c = cap.classical_capacity(ch).value
        q = cap.quantum_capacity(ch)
        assert q <= cap.eao_quantum_capacity(ch) + 1e-9
        assert c <= np.log2(ch.d_in) + q + 1e-9


def test_capacity_ordering_fails_for_qutrit_ad():
    # |0>,|1> -> |0> and |2> -> |1>: one perfectly readable bit, yet log2(3) + I = h(1/3)
    ch = zoo.ad_qudit([1.0, 1.0])
    assert cap.classical_capacity(ch).value == pytest.approx(1.0, abs=1e-9)
    assert np.log2(3) + cap.quantum_capacity(ch) == pytest.approx(h(1 / 3), abs=1e-12)


# --- closed forms -------------------------------------------------------


def test_cf_unital(rng):
    probs = rng.dirichlet(np.ones(9))
    ch = zoo.pauli(probs)
    expected = np.log2(3) + float(np.sum(probs * np.log2(probs)))
    assert cap.cf_unital(ch) == pytest.approx(expected, abs=1e-10)
    assert cap.cf_pauli(probs) == pytest.approx(expected, abs=1e-12)
    assert cap.cf_unital(zoo.unitary(rand.haar_unitary(3, rng))) == pytest.approx(np.log2(3), abs=1e-10)
    two_qubit = zoo.pauli(rng.dirichlet(np.ones(16)))
    assert cap.cf_unital(two_qubit) == pytest.approx(cap.quantum_capacity(two_qubit), abs=1e-9)
    with pytest.raises(ValueError):
        cap.cf_unital(zoo.ad_qubit(0.3))


def test_cf_erasure():
    assert cap.cf_erasure(3, 0) == pytest.approx(np.log2(3))
    assert cap.cf_erasure(3, 0.5) == 0
    assert cap.cf_erasure(3, 0.3) == pytest.approx(0.4 * np.log2(3))
    assert cap.quantum_capacity(zoo.erasure(3, 0.3)) == pytest.approx(cap.cf_erasure(3, 0.3), abs=1e-12)


def test_cf_schur(rng):
    d = 3
    # psi_i = Z^i F|0>: uniform superpositions with distinct phases -> rho_E = pi_d
    f = np.exp(2j * np.pi * np.outer(np.arange(d), np.arange(d)) / d) / np.sqrt(d)
    fam = [np.linalg.matrix_power(zoo.clock(d), i) @ f for i in range(d)]
    assert cap.cf_schur(fam) == pytest.approx(0.0, abs=1e-10)
    assert cap.cf_schur([np.eye(d)] * d) == pytest.approx(np.log2(d), abs=1e-12)
    for _ in range(10):
        us = [rand.haar_unitary(d, rng) for _ in range(d)]
        v = cap.cf_schur(us)
        assert v >= -1e-9
        assert v == pytest.approx(cap.quantum_capacity(zoo.schur_dephasing(us)), abs=1e-9)


def test_cf_ad_qudit(rng):
    for g in rng.uniform(0, 1, 10):
        assert cap.cf_ad_qudit([g]) == pytest.approx(h((1 + g) / 2) - h(g / 2), abs=1e-12)
    assert cap.cf_ad_qudit([0, 0, 0]) == pytest.approx(2.0)
    for gs in rng.uniform(0, 1, (20, 2)):
        assert cap.cf_ad_qudit(gs) == pytest.approx(cap.quantum_capacity(zoo.ad_qudit(gs)), abs=1e-9)


def test_cf_qubit_extreme(rng):
    assert cap.cf_qubit_extreme(0, 0) == pytest.approx(1.0)
    for b in rng.uniform(0, np.pi / 2, 5):
        g = np.sin(b) ** 2
        assert cap.cf_qubit_extreme(0, b) == pytest.approx(cap.cf_ad_qubit(g), abs=1e-12)
    for a, b in rng.uniform(-np.pi, np.pi, (30, 2)):
        assert cap.cf_qubit_extreme(a, b) == pytest.approx(cap.quantum_capacity(zoo.qubit_extreme(a, b)), abs=1e-9)


def test_cf_depolarizing_and_zero_threshold():
    for p in np.linspace(0, 1, 11):
        assert cap.cf_depolarizing(2, p) == pytest.approx(cap.quantum_capacity(zoo.depolarizing(2, p)), abs=1e-9)
    t = cap.depolarizing_threshold(2)
    assert t.value == pytest.approx(0.19, abs=0.005)
    assert t.residual <= 1e-9
    assert t.bracket[0] <= t.value <= t.bracket[1]


def test_thresholds_other_families():
    assert cap.zero_capacity_threshold(zoo.ad_qubit, 0, 1).value == pytest.approx(0.5, abs=1e-6)
    for d in (2, 3, 4):
        assert cap.zero_capacity_threshold(lambda p: zoo.erasure(d, p), 0, 1).value == pytest.approx(0.5, abs=1e-9)
    with pytest.raises(NoSignChange):
        cap.zero_capacity_threshold(zoo.ad_qubit, 0, 0.4)


def test_depolarizing_threshold_monotone_in_d():
    vals = [cap.depolarizing_threshold(d).value for d in (2, 3, 4, 5)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 0.5
