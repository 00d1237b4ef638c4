"""Exact network-flow kernel.

Capacities may be ints, Fractions or :class:`~atomicflg.scalar.Scalar`
values for :func:`max_flow`; :func:`max_cost_flow` needs integer capacities
and integer (arbitrary precision) costs.
"""
from __future__ import annotations

import heapq
from collections import deque, namedtuple
from dataclasses import dataclass

from .errors import InputError

__all__ = ["Arc", "FlowNetwork", "FlowResult", "max_flow", "max_source_side_min_cut",
           "max_cost_flow", "cut_capacity"]

Arc = namedtuple("Arc", "tail head cap cost")


@dataclass(frozen=True)
class FlowNetwork:
    n_nodes: int
    source: int
    sink: int
    arcs: tuple

    def __post_init__(self):
        arcs = tuple(Arc(a[0], a[1], a[2], a[3] if len(a) > 3 else 0) for a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        if self.source == self.sink:
            raise InputError("source and sink must differ")
        for node in (self.source, self.sink):
            if not 0 <= node < self.n_nodes:
                raise InputError(f"terminal {node} out of range")
        for i, (u, v, cap, cost) in enumerate(arcs):
            if not (0 <= u < self.n_nodes and 0 <= v < self.n_nodes):
                raise InputError(f"arc {i} has an endpoint outside the node range")
            if cap < 0:
                raise InputError(f"arc {i} has negative capacity {cap}")
            if u == self.sink or v == self.source:
                raise InputError(f"arc {i} leaves the sink or enters the source")


@dataclass(frozen=True)
class FlowResult:
    flow: tuple
    value: object
    cost: int
    source_side: frozenset


class _Residual:
    """Paired residual arcs: arc ``i`` of the network is ``2i``, its reverse ``2i+1``."""

    def __init__(self, net: FlowNetwork, flow=None):
        self.net = net
        self.head = []
        self.res = []
        self.cost = []
        self.adj = [[] for _ in range(net.n_nodes)]
        for i, (u, v, cap, cost) in enumerate(net.arcs):
            f = flow[i] if flow is not None else cap - cap
            self.adj[u].append(2 * i)
            self.adj[v].append(2 * i + 1)
            self.head += [v, u]
            self.res += [cap - f, f]
            self.cost += [cost, -cost]

    def push(self, e, amount):
        self.res[e] = self.res[e] - amount
        self.res[e ^ 1] = self.res[e ^ 1] + amount

    def flows(self):
        return tuple(self.res[2 * i + 1] for i in range(len(self.net.arcs)))

    def reachable_from(self, start):
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                if self.res[e] > 0 and self.head[e] not in seen:
                    seen.add(self.head[e])
                    queue.append(self.head[e])
        return frozenset(seen)

    def reaching(self, target):
        """Nodes that can reach ``target`` through residual arcs."""
        seen = {target}
        queue = deque([target])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                # e leaves u; its partner e^1 enters u from head[e]
                if self.res[e ^ 1] > 0 and self.head[e] not in seen:
                    seen.add(self.head[e])
                    queue.append(self.head[e])
        return frozenset(seen)


def cut_capacity(net: FlowNetwork, side) -> object:
    total = 0
    for u, v, cap, _ in net.arcs:
        if u in side and v not in side:
            total = cap + total
    return total


def max_flow(net: FlowNetwork) -> FlowResult:
    """Edmonds-Karp maximum flow with the residual-reachable min cut attached."""
    r = _Residual(net)
    s, t = net.source, net.sink
    value = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for e in r.adj[u]:
                v = r.head[e]
                if r.res[e] > 0 and v not in parent:
                    parent[v] = e
                    queue.append(v)
        if t not in parent:
            break
        path = []
        v = t
        while parent[v] is not None:
            e = parent[v]
            path.append(e)
            v = r.head[e ^ 1]
        delta = min(r.res[e] for e in path)
        for e in path:
            r.push(e, delta)
        value = delta + value
    flow = r.flows()
    cost = sum(f * a.cost for f, a in zip(flow, net.arcs) if a.cost)
    return FlowResult(flow, value, cost, r.reachable_from(s))


def _check_max_flow(net: FlowNetwork, result: FlowResult) -> None:
    if len(result.flow) != len(net.arcs):
        raise InputError("flow result does not belong to this network")
    balance = [0] * net.n_nodes
    for f, (u, v, cap, _) in zip(result.flow, net.arcs):
        if f < 0 or f > cap:
            raise InputError("flow result violates a capacity bound")
        balance[u] = balance[u] - f
        balance[v] = balance[v] + f
    for node, b in enumerate(balance):
        if node not in (net.source, net.sink) and b != 0:
            raise InputError(f"flow result violates conservation at node {node}")
    if balance[net.sink] != result.value:
        raise InputError("flow result value does not match its arc flows")
    if net.sink in _Residual(net, result.flow).reachable_from(net.source):
        raise InputError("flow result is not maximum (augmenting path exists)")


def max_source_side_min_cut(net: FlowNetwork, result: FlowResult) -> frozenset:
    """Inclusion-maximal source side among all minimum cuts.

    It is the complement of the nodes that can still reach the sink in the
    residual graph of a maximum flow.
    """
    _check_max_flow(net, result)
    reach_sink = _Residual(net, result.flow).reaching(net.sink)
    return frozenset(range(net.n_nodes)) - reach_sink


def max_cost_flow(net: FlowNetwork) -> FlowResult:
    """Maximum-value integral flow of maximum total cost.

    Successive shortest paths on negated costs.  The first search is
    Bellman-Ford (costs may be negative), later ones Dijkstra on reduced
    costs.  Requires a network without positive-cost cycles.
    """
    for a in net.arcs:
        if not isinstance(a.cap, int) or not isinstance(a.cost, int):
            raise InputError("max_cost_flow needs integer capacities and costs")
    neg = FlowNetwork(net.n_nodes, net.source, net.sink,
                      tuple((u, v, cap, -cost) for u, v, cap, cost in net.arcs))
    r = _Residual(neg)
    s, t, n = net.source, net.sink, net.n_nodes

    # Bellman-Ford for initial potentials
    INF = None
    dist = [INF] * n
    dist[s] = 0
    for _ in range(n):
        changed = False
        for u in range(n):
            if dist[u] is None:
                continue
            for e in r.adj[u]:
                if r.res[e] > 0:
                    v = r.head[e]
                    nd = dist[u] + r.cost[e]
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        changed = True
        if not changed:
            break
    else:
        raise InputError("network has a positive-cost cycle")
    potential = [d if d is not None else 0 for d in dist]

    value = 0
    while True:
        dist = [None] * n
        parent = [None] * n
        dist[s] = 0
        heap = [(0, s)]
        while heap:
            d, u = heapq.heappop(heap)
            if d != dist[u]:
                continue
            for e in r.adj[u]:
                if r.res[e] <= 0:
                    continue
                v = r.head[e]
                nd = d + r.cost[e] + potential[u] - potential[v]
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    parent[v] = e
                    heapq.heappush(heap, (nd, v))
        if dist[t] is None:
            break
        for v in range(n):
            if dist[v] is not None:
                potential[v] += dist[v]
        path = []
        v = t
        while v != s:
            e = parent[v]
            path.append(e)
            v = r.head[e ^ 1]
        delta = min(r.res[e] for e in path)
        for e in path:
            r.push(e, delta)
        value += delta
    flow = r.flows()
    cost = sum(f * a.cost for f, a in zip(flow, net.arcs))
    return FlowResult(flow, value, cost, r.reachable_from(s))
