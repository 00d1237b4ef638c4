"""Client equilibrium constructors.

* rounded profiles by augmenting paths (unit weights),
* pi-favoring profiles by integral max-cost flow (unit weights),
* greedy pure equilibria for arbitrary weights,
* exact enumeration of all (mixed) equilibria on micro instances.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations, product

from .classes import ClassSet, class_set
from .errors import GuardExceeded, InputError, InvariantError, UnsupportedModeError
from .flow import FlowNetwork, max_cost_flow
from .game import (ClientProfile, FullProfilePolicy, Instance, check_permutation,
                   check_placement, shopping_range, verify_client_equilibrium)
from .lp import LinearProgram, solve
from .scalar import ONE, ZERO

__all__ = [
    "rounded_profile", "is_rounded", "favoring_profile", "greedy_weighted_equilibrium",
    "enumerate_equilibria", "EquilibriumPolytope", "equilibrium_polytope",
    "RoundedPolicy", "FavoringPolicy", "GreedyPolicy", "assignment_loads",
]


def _require_unweighted(inst: Instance, what: str):
    if not inst.unweighted:
        raise UnsupportedModeError(f"{what} is defined for unit client weights only")


def assignment_loads(inst: Instance, assign: dict) -> tuple:
    loads = [ZERO] * inst.k
    w = inst.graph.weights
    for v, f in assign.items():
        loads[f] = loads[f] + w[v]
    return tuple(loads)


def rounded_profile(inst: Instance, s, cs: ClassSet = None) -> dict:
    """Pure rounded client equilibrium as a ``client -> facility`` dict.

    Per class, clients are added one at a time along an augmenting path in
    the residual graph that starts at a facility of currently minimal load,
    so facility loads within a class never differ by more than one.
    """
    _require_unweighted(inst, "rounded_profile")
    s = check_placement(inst, s)
    cs = class_set(inst, s) if cs is None else cs
    assign = {}
    for c in cs.classes:
        F = sorted(c.facilities)
        reach = {f: sorted(inst.graph.reached_by(s[f]) & c.clients) for f in F}
        load = {f: 0 for f in F}
        unassigned = set(c.clients)
        while unassigned:
            low = min(load.values())
            starts = [("f", f) for f in F if load[f] == low]
            parent = {}
            seen = set(starts)
            queue = deque(starts)
            found = []
            while queue:
                kind, x = queue.popleft()
                if kind == "f":
                    for v in reach[x]:
                        node = ("v", v)
                        if assign.get(v) == x or node in seen:
                            continue
                        seen.add(node)
                        parent[node] = x
                        if v in unassigned:
                            found.append(v)
                        else:
                            queue.append(node)
                else:
                    node = ("f", assign[x])
                    if node not in seen:
                        seen.add(node)
                        parent[node] = x
                        queue.append(node)
            if not found:
                raise InvariantError(f"no augmenting path in class {sorted(c.facilities)}")
            v = min(found)
            unassigned.discard(v)
            node = ("v", v)
            while node in parent:
                f = parent[node]
                assign[node[1]] = f
                prev = ("f", f)
                if prev not in parent:
                    load[f] += 1
                    break
                node = ("v", parent[prev])
    return assign


def is_rounded(inst: Instance, s, cs: ClassSet, assign: dict) -> bool:
    _require_unweighted(inst, "is_rounded")
    if set(assign) != set(cs.class_of_client):
        return False
    for v, f in assign.items():
        if f not in shopping_range(inst, s, v) or cs.class_of_facility[f] != cs.class_of_client[v]:
            return False
    loads = assignment_loads(inst, assign)
    for f, load in enumerate(loads):
        avg = cs.of_facility(f).avg_load
        if load != math.floor(avg) and load != math.ceil(avg):
            return False
    return True


def favoring_profile(inst: Instance, s, pi, cs: ClassSet = None) -> dict:
    """Rounded profile maximizing the loads lexicographically in the order ``pi``.

    ``pi`` lists facilities from most to least favored.  Solved as an
    integral max-cost flow: each facility has a base arc to the sink with
    capacity floor(class load) and cost 2**k, plus one extra unit arc with
    cost 2**(k - position).
    """
    _require_unweighted(inst, "favoring_profile")
    s = check_placement(inst, s)
    k = inst.k
    pi = check_permutation(pi, k)
    cs = class_set(inst, s) if cs is None else cs
    clients = sorted(cs.class_of_client)
    cnode = {v: 2 + i for i, v in enumerate(clients)}
    fnode = {f: 2 + len(clients) + f for f in range(k)}
    arcs = [(0, cnode[v], 1, 0) for v in clients]
    client_arcs = []
    for v in clients:
        ci = cs.class_of_client[v]
        options = [f for f in sorted(shopping_range(inst, s, v)) if cs.class_of_facility[f] == ci]
        if not options:
            raise InvariantError(f"client {v} has no facility of its own class in range")
        for f in options:
            client_arcs.append((len(arcs), v, f))
            arcs.append((cnode[v], fnode[f], 1, 0))
    position = {f: i + 1 for i, f in enumerate(pi)}
    for f in range(k):
        arcs.append((fnode[f], 1, math.floor(cs.of_facility(f).avg_load), 2 ** k))
        arcs.append((fnode[f], 1, 1, 2 ** (k - position[f])))
    net = FlowNetwork(2 + len(clients) + k, 0, 1, tuple(arcs))
    result = max_cost_flow(net)
    assign = {v: f for i, v, f in client_arcs if result.flow[i]}
    if len(assign) != len(clients) or not is_rounded(inst, s, cs, assign):
        raise InvariantError("max-cost flow did not produce a rounded profile")
    return assign


def greedy_weighted_equilibrium(inst: Instance, s) -> dict:
    """Pure client equilibrium for arbitrary weights.

    Heaviest clients first (ties by id), each onto a least loaded facility
    in range.  With placement restrictions this greedy pass alone can leave
    unstable clients, so it is followed by best-response moves, which
    terminate because the game has a weighted potential.
    """
    s = check_placement(inst, s)
    w = inst.graph.weights
    ranges = [sorted(shopping_range(inst, s, v)) for v in range(inst.n)]
    order = sorted((v for v in range(inst.n) if ranges[v]), key=lambda v: (-w[v], v))
    load = [ZERO] * inst.k
    assign = {}
    for v in order:
        f = min(ranges[v], key=lambda g: (load[g], g))
        assign[v] = f
        load[f] = load[f] + w[v]
    while True:
        for v in sorted(assign):
            f = assign[v]
            own = load[f] - w[v]
            g = min(ranges[v], key=lambda g: (own if g == f else load[g], g))
            if g != f and load[g] < own:
                assign[v] = g
                load[f] = own
                load[g] = load[g] + w[v]
                break
        else:
            return assign


class RoundedPolicy(FullProfilePolicy):
    kind = "rounded"

    def _evaluate(self, s):
        return ClientProfile.from_assignment(self.inst, rounded_profile(self.inst, s))


class FavoringPolicy(FullProfilePolicy):
    def __init__(self, inst, pi):
        super().__init__(inst)
        self.pi = check_permutation(pi, inst.k)
        self.kind = "pi-favoring(" + ",".join(map(str, self.pi)) + ")"

    def _evaluate(self, s):
        return ClientProfile.from_assignment(self.inst, favoring_profile(self.inst, s, self.pi))


class GreedyPolicy(FullProfilePolicy):
    kind = "greedy-weighted"

    def _evaluate(self, s):
        return ClientProfile.from_assignment(self.inst, greedy_weighted_equilibrium(self.inst, s))


# --------------------------------------------------------------------------
# exact enumeration


@dataclass(frozen=True)
class EquilibriumPolytope:
    """Client equilibria whose supports lie inside ``pattern``.

    ``variables`` maps ``(client, facility)`` to the LP column; ``lp``
    holds simplex, tie and no-better-option constraints.
    """

    placement: tuple
    pattern: dict
    variables: dict
    lp: LinearProgram
    sample: ClientProfile

    def load_expr(self, inst, f, exclude=None) -> dict:
        w = inst.graph.weights
        return {j: w[v] for (v, g), j in self.variables.items() if g == f and v != exclude}

    def load_range(self, inst, f) -> tuple:
        """Exact (min, max) expected load of facility ``f`` over the polytope."""
        expr = self.load_expr(inst, f)
        lo = solve(self.lp, expr).value
        hi = solve(self.lp, expr, maximize=True).value
        return lo, hi

    def profile(self, inst, x) -> ClientProfile:
        rows = [[ZERO] * inst.k for _ in range(inst.n)]
        for (v, f), j in self.variables.items():
            rows[v][f] = x[j]
        return ClientProfile(tuple(tuple(r) for r in rows))

    def contains(self, inst, sigma: ClientProfile) -> bool:
        x = [ZERO] * self.lp.n_vars
        for v, row in enumerate(sigma.rows):
            for f, p in enumerate(row):
                if p:
                    if (v, f) not in self.variables:
                        return False
                    x[self.variables[v, f]] = p
        for coeffs, sense, rhs in self.lp.rows:
            lhs = sum((c * x[j] for j, c in coeffs.items()), ZERO)
            if sense == "==" and lhs != rhs or sense == "<=" and lhs > rhs or sense == ">=" and lhs < rhs:
                return False
        return True


def _pattern_lp(inst, s, pattern, ranges):
    variables = {}
    for v in sorted(pattern):
        for f in sorted(pattern[v]):
            variables[v, f] = len(variables)
    lp = LinearProgram(len(variables))
    w = inst.graph.weights

    def excluded(v, f):
        return {j: w[u] for (u, g), j in variables.items() if g == f and u != v}

    for v in sorted(pattern):
        lp.add({variables[v, f]: ONE for f in pattern[v]}, "==", 1)
        supp = sorted(pattern[v])
        base = excluded(v, supp[0])
        for f in supp[1:]:
            diff = dict(base)
            for j, c in excluded(v, f).items():
                diff[j] = diff.get(j, ZERO) - c
            lp.add(diff, "==", 0)
        for g in ranges[v]:
            if g in pattern[v]:
                continue
            diff = dict(base)
            for j, c in excluded(v, g).items():
                diff[j] = diff.get(j, ZERO) - c
            lp.add(diff, "<=", 0)
    return variables, lp


def equilibrium_polytope(inst: Instance, s, pattern: dict):
    """Build the polytope of a support pattern; ``None`` if it is empty."""
    s = check_placement(inst, s)
    ranges = {v: sorted(shopping_range(inst, s, v)) for v in pattern}
    for v, supp in pattern.items():
        if not supp or not set(supp) <= set(ranges[v]):
            raise InputError(f"support of client {v} must be a nonempty subset of its range")
    pattern = {v: frozenset(p) for v, p in pattern.items()}
    variables, lp = _pattern_lp(inst, s, pattern, ranges)
    res = solve(lp)
    if not res.feasible:
        return None
    poly = EquilibriumPolytope(s, pattern, variables, lp, None)
    sample = poly.profile(inst, res.x)
    return EquilibriumPolytope(s, pattern, variables, lp, sample)


def _nonempty_subsets(items):
    for r in range(1, len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, r))


def iter_support_patterns(inst, s):
    ranges = {v: sorted(shopping_range(inst, s, v)) for v in range(inst.n)}
    clients = [v for v in range(inst.n) if ranges[v]]
    choices = [list(_nonempty_subsets(ranges[v])) for v in clients]
    for combo in product(*choices):
        yield dict(zip(clients, combo))


def _always_tied(inst, poly, v, g):
    """True if ``g`` has minimal excluded load for ``v`` everywhere on ``poly``."""
    f0 = min(poly.pattern[v])
    obj = poly.load_expr(inst, g, exclude=v)
    for j, c in poly.load_expr(inst, f0, exclude=v).items():
        obj[j] = obj.get(j, ZERO) - c
    res = solve(poly.lp, obj, maximize=True)
    return res.value.sign() <= 0


def enumerate_equilibria(inst: Instance, s, guard_clients: int = 8, guard_facilities: int = 3,
                         reduce: bool = True) -> list:
    """All client equilibria of ``s`` as a list of :class:`EquilibriumPolytope`.

    Every support pattern gets an exact feasibility check.  With ``reduce``
    a polytope is dropped when it sits inside the polytope of a pattern with
    one more facility for some client, so continuous families come back as
    a single polytope.  The union of the returned polytopes is the full
    equilibrium set.
    """
    s = check_placement(inst, s)
    clients = [v for v in range(inst.n) if shopping_range(inst, s, v)]
    if len(clients) > guard_clients or inst.k > guard_facilities:
        raise GuardExceeded(
            f"micro-only: {len(clients)} covered clients / {inst.k} facilities exceed the guard "
            f"({guard_clients} / {guard_facilities})")
    found = []
    for pattern in iter_support_patterns(inst, s):
        poly = equilibrium_polytope(inst, s, pattern)
        if poly is not None:
            found.append(poly)
    if not reduce:
        return found
    kept = []
    for poly in found:
        redundant = False
        for v in sorted(poly.pattern):
            for g in sorted(shopping_range(inst, s, v) - poly.pattern[v]):
                if _always_tied(inst, poly, v, g):
                    redundant = True
                    break
            if redundant:
                break
        if not redundant:
            kept.append(poly)
    return kept


def check_profile(inst, s, sigma):
    """Raise :class:`InvariantError` unless ``sigma`` is a client equilibrium."""
    bad = verify_client_equilibrium(inst, s, sigma)
    if bad is not None:
        raise InvariantError(f"profile at {s} is not a client equilibrium: {bad}")
