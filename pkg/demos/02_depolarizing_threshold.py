# coding: utf-8

# # Where does depolarizing noise kill the quantum capacity?
#
# For the d-dimensional depolarizing channel I(Phi) decreases in p. We
# bisect for the zero. The root is near 0.19 for a qubit and creeps towards
# one half as the dimension grows.

from qcapacity import capacity as cap

prev = 0.0
for d in range(2, 9):
    t = cap.depolarizing_threshold(d)
    print(f"d={d}  p*={t.value:.6f}  bracket=({t.bracket[0]:.3e}, {t.bracket[1]:.3e})  |I|={t.residual:.1e}")
    assert prev < t.value < 0.5
    prev = t.value
