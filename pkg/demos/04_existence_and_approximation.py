"""
Weighted clients can rule out an SPE. The exact search decides small cases,
and the k-approximate construction always works.
"""
from fractions import Fraction

from atomicflg.analysis import reach_table
from atomicflg.instances import fig5_left, fig5_right
from atomicflg.scalar import GOLDEN_RATIO
from atomicflg.spe import k_approx_spe, spe_exists, verify_spe

inst = fig5_left()
for alpha in (1, Fraction(3, 2), 2):
    d = spe_exists(inst, alpha)
    print(f"alpha {alpha}: {'exists at ' + str(d.placement) if d.exists else 'none'}")

# %% a gadget with irrational weights has no alpha-SPE below the golden ratio
gadget = fig5_right(Fraction(1, 100))
print("reach per vertex:", {gadget.graph.names[v]: str(x) for v, x in reach_table(gadget, 0).items()})
for alpha in (GOLDEN_RATIO - Fraction(1, 10), GOLDEN_RATIO):
    print(f"alpha {alpha} ~ {float(alpha):.4f}:", "exists" if spe_exists(gadget, alpha).exists else "none")

# %% every facility on its best vertex, clients mixing uniformly: a k-approximate SPE
s, cert = k_approx_spe(gadget)
print("k-approx placement:", s, "passes at alpha = k:", verify_spe(gadget, cert, gadget.k) is None)
