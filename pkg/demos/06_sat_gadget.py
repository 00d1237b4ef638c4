"""
The CNF-to-instance reduction: sizes, and an SPE certificate built from a
satisfying assignment.
"""
from fractions import Fraction

from atomicflg.analysis import sat_certificate
from atomicflg.formats import to_dot
from atomicflg.instances import CnfFormula, reduce_sat, reduction_counts
from atomicflg.spe import verify_spe

formula = CnfFormula(1, ({1},) * 4)
alpha, eps = Fraction(5, 4), Fraction(1, 100)
inst = reduce_sat(formula, alpha, eps)
print("closed-form sizes:", reduction_counts(formula))
print("built:", inst.n, "vertices,", len(inst.graph.edges), "arcs,", inst.k, "facilities")

cert = sat_certificate(inst, formula, (True,))
print("certificate passes at alpha 5/4:", verify_spe(inst, cert, alpha) is None)
print("loads:", [str(x) for x in cert.loads(inst, cert.base)])

# %% Graphviz source for a picture
print(to_dot(inst, cert.base)[:300], "...")
