"""
Improving-move dynamics reach a subgame perfect equilibrium on unit-weight
instances. The sorted load vector rises at every step after the first.
"""
import random

from atomicflg.instances import random_instance
from atomicflg.spe import find_spe, verify_spe

rng = random.Random(7)
inst = random_instance(rng, n=8, k=3, density=0.3)

s, cert, trace = find_spe(inst)
for i, step in enumerate(trace.steps, 1):
    print(f"step {i}: facility {step.mover} {step.source} -> {step.target}, "
          f"sorted loads {[str(x) for x in step.sort_before]} -> {[str(x) for x in step.sort_after]}")
print("final placement:", s, "loads:", [str(x) for x in cert.loads(inst, s)])
print("verified:", verify_spe(inst, cert) is None)

# %% iteration counts over a batch
counts = [find_spe(random_instance(rng, 8, 3, 0.3))[2].iterations for _ in range(100)]
print("iterations: max", max(counts), "mean", sum(counts) / len(counts))
