"""Brute-force reference implementations used only by the tests.

They share no code with the package beyond reading instance fields.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


def closed_nbhd(inst, v):
    return {v} | {b for a, b in inst.graph.edges if a == v}


def ranges(inst, s):
    return [frozenset(f for f, loc in enumerate(s) if loc in closed_nbhd(inst, v)) for v in range(inst.n)]


def pure_loads(inst, s, assign):
    loads = [Fraction(0)] * inst.k
    for v, f in assign.items():
        loads[f] += Fraction(inst.graph.weights[v].a)
    return loads


def all_pure_assignments(inst, s):
    """Every pure feasible profile as a dict (covered clients only)."""
    rng = ranges(inst, s)
    covered = [v for v in range(inst.n) if rng[v]]
    for choice in product(*(sorted(rng[v]) for v in covered)):
        yield dict(zip(covered, choice))


def is_pure_equilibrium(inst, s, assign):
    """Rational weights only: no client strictly gains by switching."""
    loads = pure_loads(inst, s, assign)
    rng = ranges(inst, s)
    for v, f in assign.items():
        w = Fraction(inst.graph.weights[v].a)
        for g in rng[v]:
            if g != f and loads[g] < loads[f] - w:
                return False
    return True


def classes_bruteforce(inst, s):
    """Class set by exhaustive minimum-ratio subset search (rational weights)."""
    F = set(range(inst.k))
    V = set(range(inst.n))
    out = []
    while F:
        best, best_T = None, None
        for r in range(1, len(F) + 1):
            for T in combinations(sorted(F), r):
                cov = {v for v in V if any(s[f] in closed_nbhd(inst, v) for f in T)}
                ratio = Fraction(sum(Fraction(inst.graph.weights[v].a) for v in cov), len(T))
                if best is None or ratio < best or (ratio == best and len(T) > len(best_T)):
                    best, best_T = ratio, set(T)
        cov = {v for v in V if any(s[f] in closed_nbhd(inst, v) for f in best_T)}
        out.append((frozenset(best_T), frozenset(cov), best))
        F -= best_T
        V -= cov
    return out


def rounded_assignments(inst, s):
    """All rounded pure profiles for a unit-weight instance."""
    cls = classes_bruteforce(inst, s)
    of_f = {f: i for i, (Fi, _, _) in enumerate(cls) for f in Fi}
    of_v = {v: i for i, (_, Vi, _) in enumerate(cls) for v in Vi}
    for assign in all_pure_assignments(inst, s):
        if any(of_f[f] != of_v[v] for v, f in assign.items()):
            continue
        loads = pure_loads(inst, s, assign)
        if all(loads[f] in (cls[of_f[f]][2].__floor__(), cls[of_f[f]][2].__ceil__()) for f in range(inst.k)):
            yield assign


def lex_max_favoring(inst, s, pi):
    """Best ``loads`` in pi order among all rounded profiles."""
    return max(tuple(pure_loads(inst, s, a)[f] for f in pi) for a in rounded_assignments(inst, s))


def min_cut_value(net):
    """Minimum s-t cut capacity by enumerating node subsets."""
    others = [x for x in range(net.n_nodes) if x not in (net.source, net.sink)]
    best = None
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            side = {net.source, *extra}
            cap = sum((a.cap for a in net.arcs if a.tail in side and a.head not in side), 0)
            if best is None or cap < best:
                best = cap
    return best


def all_min_cut_sides(net):
    others = [x for x in range(net.n_nodes) if x not in (net.source, net.sink)]
    cuts = []
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            side = frozenset({net.source, *extra})
            cap = sum((a.cap for a in net.arcs if a.tail in side and a.head not in side), 0)
            cuts.append((cap, side))
    best = min(c for c, _ in cuts)
    return [side for c, side in cuts if c == best]


def best_integral_flow(net):
    """(max value, max cost among max-value flows) over all integral flows."""
    n = net.n_nodes
    arcs = net.arcs
    last_use = {}
    for i, a in enumerate(arcs):
        last_use[a.tail] = i
        last_use[a.head] = i
    closing = {}
    for node, i in last_use.items():
        if node not in (net.source, net.sink):
            closing.setdefault(i, []).append(node)
    best = [None]
    balance = [0] * n

    def rec(i, cost):
        if i == len(arcs):
            key = (balance[net.sink], cost)
            if best[0] is None or key > best[0]:
                best[0] = key
            return
        a = arcs[i]
        for x in range(a.cap + 1):
            balance[a.tail] -= x
            balance[a.head] += x
            if all(balance[node] == 0 for node in closing.get(i, ())):
                rec(i + 1, cost + x * a.cost)
            balance[a.tail] += x
            balance[a.head] -= x

    rec(0, 0)
    # nodes touched by no arc never close, which is fine: they carry nothing
    return best[0]
