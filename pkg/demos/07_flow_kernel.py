"""
The exact flow kernel used by the class and rounding code.
"""
from atomicflg.flow import FlowNetwork, max_cost_flow, max_flow, max_source_side_min_cut
from atomicflg.scalar import GOLDEN_RATIO

# arcs are (tail, head, capacity, cost)
net = FlowNetwork(4, 0, 3, ((0, 1, 2, 1), (0, 2, 2, 4), (1, 3, 3, 0), (2, 3, 1, 0), (1, 2, 1, 5)))
res = max_flow(net)
print("max flow:", res.value, "largest min-cut source side:", sorted(max_source_side_min_cut(net, res)))

best = max_cost_flow(net)
print("max-cost max flow:", best.value, "cost", best.cost, "arc flows", best.flow)

# %% capacities may be irrational
print(max_flow(FlowNetwork(3, 0, 2, ((0, 1, GOLDEN_RATIO, 0), (1, 2, 2, 0)))).value)
