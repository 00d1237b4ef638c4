"""
Covered client weight at an SPE against the best placement. The ratio never
exceeds 2, and the clique-with-pendants family attains it.
"""
import random

from atomicflg.analysis import core_spe_certificate, poa_certificate
from atomicflg.instances import fig8, random_instance
from atomicflg.spe import find_spe

for k in range(2, 6):
    inst = fig8(k)
    rep = poa_certificate(inst, core_spe_certificate(inst))
    print(f"k={k}: SPE covers {rep.state_weight}, optimum {rep.opt_weight}, ratio {rep.ratio}")

# %% ratios of the SPEs found by the dynamics on random instances
rng = random.Random(3)
ratios = []
for _ in range(200):
    inst = random_instance(rng, rng.randint(2, 8), rng.randint(1, 3), 0.3)
    ratios.append(poa_certificate(inst, find_spe(inst)[1]).ratio)
print("worst ratio seen:", max(ratios))
