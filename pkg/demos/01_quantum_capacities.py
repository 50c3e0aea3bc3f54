# coding: utf-8

# # Quantum capacities of a few channels
#
# The additive quantum capacity of a channel is its coherent information at
# the maximally mixed input, I(Phi) = H(Phi(pi)) - H(Phi^c(pi)). It can be
# negative, which an ordinary capacity never is. Everything is in bits
# (log base 2).

import numpy as np

from qcapacity import capacity as cap
from qcapacity import zoo
from qcapacity.states import basis_projector


# A few textbook channels next to their closed forms.

rows = [
    ("identity d=3", zoo.identity(3), np.log2(3)),
    ("erasure d=2 p=0.25", zoo.erasure(2, 0.25), cap.cf_erasure(2, 0.25)),
    ("depolarizing d=2 p=0.1", zoo.depolarizing(2, 0.1), cap.cf_depolarizing(2, 0.1)),
    ("replacement d=3 (pure)", zoo.replacement(3, basis_projector(0, 3)), cap.cf_replacement(3)),
    ("amplitude damping 0.3", zoo.ad_qubit(0.3), cap.cf_ad_qubit(0.3)),
]
for name, ch, closed in rows:
    print(f"{name:26s} I = {cap.quantum_capacity(ch): .6f}   closed form {closed: .6f}")


# Qubit amplitude damping runs from +1 (no damping) to -1 (full decay) and
# crosses zero at gamma = 0.5.

for g in np.linspace(0, 1, 11):
    print(f"gamma={g:.1f}  I={cap.quantum_capacity(zoo.ad_qubit(g)): .4f}")
print("zero crossing:", cap.zero_capacity_threshold(zoo.ad_qubit, 0, 1).value)


# The coherent classical capacity log d + I is only meaningful when it is
# non-negative; below that it is reported as undefined.

for g in (0.0, 0.5, 0.9):
    print(g, cap.coherent_classical_capacity(zoo.ad_qubit(g)))
