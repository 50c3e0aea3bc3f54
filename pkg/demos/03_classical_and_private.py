# coding: utf-8

# # Classical and private capacities over orthogonal ensembles
#
# Messages are written into an orthonormal basis with some probabilities.
# chi_ORT is the Holevo quantity of the channel outputs. Its maximum over
# the probabilities comes from a quantum Blahut-Arimoto iteration. The
# private version subtracts what leaks to the environment.

import numpy as np

from qcapacity import capacity as cap
from qcapacity import rand, zoo


# A binary symmetric channel embedded as a quantum channel gives the familiar
# 1 - h(q).

q = 0.1
w = np.array([[1 - q, q], [q, 1 - q]])
rep = cap.classical_capacity(zoo.simulate_classical(w))
print("BSC(0.1):", rep.value, "iterations", rep.iterations, "gap", rep.gap)


# The basis is a free choice. Searching over bases can only help.

rng = np.random.default_rng(1)
ch = rand.random_channel(2, 2, 2, rng)
fixed = cap.classical_capacity(ch).value
searched = cap.classical_capacity_basis_search(ch, restarts=8, seed=1).value
print(f"computational basis {fixed:.6f}  best basis found {searched:.6f}")


# Private capacity sits between 0 and the classical one.

for g in (0.0, 0.2, 0.5, 0.8):
    ad = zoo.ad_qubit(g)
    p = cap.private_capacity(ad).value
    c = cap.classical_capacity(ad).value
    print(f"AD gamma={g}:  P={p:.6f}  C={c:.6f}")
