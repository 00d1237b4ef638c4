"""
Client equilibria of a weighted instance: greedy pure equilibria and the full
equilibrium set as a list of polytopes.
"""
from atomicflg.client_eq import assignment_loads, enumerate_equilibria, greedy_weighted_equilibrium
from atomicflg.instances import fig5_left, obs2

inst = fig5_left()  # path w1 -> {w2, w3} with weights 3, 2, 1
names = inst.graph.names


def span(lo, hi):
    return str(lo) if lo == hi else f"{lo}..{hi}"


# %% greedy: heaviest client first, each onto the least loaded facility in range
a = greedy_weighted_equilibrium(inst, (0, 1))
print("greedy at (w1, w2):", {names[v]: f for v, f in a.items()}, "loads", [str(x) for x in assignment_loads(inst, a)])

# %% every equilibrium for every placement
for s in [(0, 0), (0, 2), (1, 1), (2, 2)]:
    polys = enumerate_equilibria(inst, s)
    print(f"({names[s[0]]}, {names[s[1]]}):")
    for p in polys:
        print("    loads", [span(*p.load_range(inst, f)) for f in range(inst.k)])

# %% one client, two facilities on it: a continuum of mixed equilibria
(p,) = enumerate_equilibria(obs2(), (0, 0))
print("single client:", p.pattern, "load range of facility 0:", span(*p.load_range(obs2(), 0)))
