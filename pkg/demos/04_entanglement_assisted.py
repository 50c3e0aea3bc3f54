# coding: utf-8

# # Entanglement-assisted orthogonal ensembles
#
# With a shared ebit, the sender rotates their half by one of d^2 orthogonal
# unitaries. With uniform weights over the Weyl operators the Holevo quantity
# equals log d + I(Phi) exactly.

import numpy as np

from qcapacity import capacity as cap
from qcapacity import rand, zoo

rng = np.random.default_rng(7)
for d in (2, 3):
    ch = rand.random_channel(d, d, 3, rng)
    lhs = cap.holevo_eao(cap.uniform_weyl_ensemble(d), ch)
    print(f"d={d}: chi_EAO={lhs:.10f}  log d + I={np.log2(d) + cap.quantum_capacity(ch):.10f}")


# In qubits the assisted quantum quantity is half the classical one.

for g in (0.0, 0.5, 1.0):
    ad = zoo.ad_qubit(g)
    print(f"AD gamma={g}:  C_EAO={cap.eao_classical_capacity(ad):.4f}  Q_EAO={cap.eao_quantum_capacity(ad):.4f}")


# A direct search over the shared input state. For the identity channel it
# reaches superdense coding's two bits.

rep = cap.ea_classical_capacity_search(zoo.identity(2), restarts=2)
print("identity, searched:", rep.value, "gap to uniform-ebit value:", rep.extras["gap_to_eao"])
