"""Minimum neighborhood sets and the class set of a placement."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import GuardExceeded, InputError, InvariantError
from .flow import FlowNetwork, max_flow, max_source_side_min_cut
from .game import Instance, check_placement
from .scalar import ONE, ZERO, Scalar

__all__ = ["ClassSet", "Class", "coverage_ratio", "mns", "mns_bruteforce", "class_set"]


def _covered(inst: Instance, s, T, Vstar) -> frozenset:
    out = set()
    for f in T:
        out |= inst.graph.reached_by(s[f])
    return frozenset(out) & Vstar


def coverage_ratio(inst: Instance, s, T, Vstar) -> Scalar:
    """``w(A_s(T) & V*) / |T|``."""
    return inst.graph.weight_of(_covered(inst, s, T, frozenset(Vstar))) / len(T)


def _min_cut_side(inst, s, F, Vstar, lam):
    """Maximal minimizer of ``w(A(T) & V*) - lam*|T|`` over ``T`` within ``F``, and its value."""
    clients = sorted(_covered(inst, s, F, Vstar))
    # node layout: 0 source, 1 sink, facilities, then clients
    fnode = {f: 2 + i for i, f in enumerate(F)}
    cnode = {v: 2 + len(F) + i for i, v in enumerate(clients)}
    w = inst.graph.weights
    infinite = inst.graph.weight_of(clients) + lam * len(F) + 1
    arcs = [(0, fnode[f], lam, 0) for f in F]
    for f in F:
        for v in sorted(inst.graph.reached_by(s[f]) & Vstar):
            arcs.append((fnode[f], cnode[v], infinite, 0))
    arcs += [(cnode[v], 1, w[v], 0) for v in clients]
    net = FlowNetwork(2 + len(F) + len(clients), 0, 1, tuple(arcs))
    result = max_flow(net)
    side = max_source_side_min_cut(net, result)
    T = frozenset(f for f in F if fnode[f] in side)
    return T, result.value - lam * len(F)


def mns(inst: Instance, s, Fstar, Vstar) -> frozenset:
    """Largest subset of ``Fstar`` with minimum coverage ratio.

    Dinkelbach iteration on the ratio; each step is a parametric min cut.
    At the optimal ratio the maximal source side of the min cut is the
    union of all minimizers, which is the unique largest one.
    """
    F = sorted(Fstar)
    if not F:
        raise InputError("MNS needs a nonempty facility set")
    Vstar = frozenset(Vstar)
    lam = coverage_ratio(inst, s, F, Vstar)
    T = frozenset(F)
    while True:
        cand, value = _min_cut_side(inst, s, F, Vstar, lam)
        if value.sign() >= 0:
            # lam is optimal; cand is the maximal minimizer
            if not cand:
                raise InvariantError("maximal min cut at the optimal ratio is empty")
            return cand
        new = coverage_ratio(inst, s, cand, Vstar)
        if not new < lam:
            raise InvariantError("Dinkelbach ratio failed to decrease")
        lam, T = new, cand


def mns_bruteforce(inst: Instance, s, Fstar, Vstar, guard: int = 20) -> frozenset:
    """Exhaustive MNS over all nonempty subsets."""
    F = sorted(Fstar)
    if not F:
        raise InputError("MNS needs a nonempty facility set")
    if len(F) > guard:
        raise GuardExceeded(f"{len(F)} facilities exceed the brute-force guard {guard}")
    Vstar = frozenset(Vstar)
    best = None
    minimizers = []
    for r in range(1, len(F) + 1):
        for T in combinations(F, r):
            ratio = coverage_ratio(inst, s, T, Vstar)
            if best is None or ratio < best:
                best, minimizers = ratio, [frozenset(T)]
            elif ratio == best:
                minimizers.append(frozenset(T))
    largest = max(len(T) for T in minimizers)
    top = [T for T in minimizers if len(T) == largest]
    union = frozenset().union(*minimizers)
    if len(top) != 1 or top[0] != union:
        raise InvariantError(f"minimizers do not form a lattice: {minimizers}")
    return union


@dataclass(frozen=True)
class Class:
    facilities: frozenset
    clients: frozenset
    avg_load: Scalar


@dataclass(frozen=True)
class ClassSet:
    classes: tuple
    class_of_facility: tuple
    class_of_client: dict

    def loads(self) -> tuple:
        return tuple(c.avg_load for c in self.classes)

    def of_facility(self, f: int) -> Class:
        return self.classes[self.class_of_facility[f]]


def class_set(inst: Instance, s, mns_fn=mns) -> ClassSet:
    """Peel off minimum neighborhood sets until all facilities are classified."""
    s = check_placement(inst, s)
    F = set(range(inst.k))
    V = set(range(inst.n))
    classes = []
    while F:
        Fi = mns_fn(inst, s, F, V)
        Vi = _covered(inst, s, Fi, frozenset(V))
        load = inst.graph.weight_of(Vi) / len(Fi)
        if classes and not classes[-1].avg_load < load:
            raise InvariantError("class loads are not strictly increasing")
        classes.append(Class(frozenset(Fi), frozenset(Vi), load))
        F -= Fi
        V -= Vi
    of_f = [None] * inst.k
    of_v = {}
    for i, c in enumerate(classes):
        for f in c.facilities:
            of_f[f] = i
        for v in c.clients:
            of_v[v] = i
    return ClassSet(tuple(classes), tuple(of_f), of_v)
