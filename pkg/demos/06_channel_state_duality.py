# coding: utf-8

# # Running a channel from its Choi state
#
# The Choi state (Phi x 1)(omega) holds the whole channel. Measure the
# reference half and keep the right outcome, which happens with probability
# 1/d. The other half is then left in Phi(rho).

import numpy as np

from qcapacity import channels as chn
from qcapacity import rand
from qcapacity.simulate import dephase_ebit, heralded_readout

rng = np.random.default_rng(3)
ch = rand.random_channel(3, 2, 3, rng)
choi = chn.choi_of(ch)
rho = rand.random_state(3, rng)
obs = np.diag([1.0, -1.0]).astype(complex)

val, herald = heralded_readout(choi, rho, obs)
print("from Choi state:", val, " herald probability:", herald)
print("direct:          ", np.trace(obs @ ch(rho)).real)


# Kraus -> Choi -> Kraus gives back the same map. The Kraus set may differ.

back = chn.channel_from_choi(choi)
print("Kraus ranks", ch.n_kraus, "->", back.n_kraus, " max action error",
      max(np.abs(back(x) - ch(x)).max() for x in [rand.random_state(3, rng) for _ in range(5)]))


# Dephasing half of an ebit leaves only classical correlations.

print(np.round(dephase_ebit(2).real, 3))
print(chn.classify(ch))
