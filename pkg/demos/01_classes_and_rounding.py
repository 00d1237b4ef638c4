"""
Class sets and rounded client profiles on a small unit-weight instance.
"""
from atomicflg.classes import class_set, mns
from atomicflg.client_eq import assignment_loads, favoring_profile, is_rounded, rounded_profile
from atomicflg.instances import fig3


def show(loads):
    return "(" + ", ".join(map(str, loads)) + ")"


inst = fig3()
names = inst.graph.names
s = (0, 1, 2)  # facility i sits on vertex i

# %% the minimum neighbourhood set of all facilities
covered = {v for v in range(inst.n) if any(v in inst.graph.reached_by(x) for x in s)}
print("MNS:", sorted(mns(inst, s, range(inst.k), covered)))

# %% repeated extraction gives the class set; average loads increase strictly
cs = class_set(inst, s)
for i, c in enumerate(cs.classes, 1):
    print(f"class {i}: facilities {sorted(c.facilities)}, "
          f"clients {[names[v] for v in sorted(c.clients)]}, average load {c.avg_load}")

# %% a rounded profile puts every facility at the floor or ceiling of its class average
r = rounded_profile(inst, s, cs)
print("rounded loads:", show(assignment_loads(inst, r)), "rounded:", is_rounded(inst, s, cs, r))

# %% favoring profiles break the rounding in a chosen order
for pi in [(0, 1, 2), (1, 0, 2)]:
    print("favoring", pi, "->", show(assignment_loads(inst, favoring_profile(inst, s, pi))))
