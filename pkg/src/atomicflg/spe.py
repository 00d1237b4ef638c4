"""Subgame perfect equilibria: dynamics, verification and exact existence search.

A full client profile assigns an equilibrium to each of the ``|V|**k``
placements.  Checking an SPE only needs the base placement and its
single-facility deviations, which is what :class:`PartialCertificate` stores.
"""
from __future__ import annotations

import logging
from collections import namedtuple
from dataclasses import dataclass, field
from itertools import product
from math import prod

from .client_eq import FavoringPolicy, GreedyPolicy, RoundedPolicy, enumerate_equilibria
from .errors import CertificateError, GuardExceeded, InputError, InvariantError, UnsupportedModeError
from .game import (ClientProfile, FullProfilePolicy, Instance, profile_loads, check_placement,
                   uniform_profile, verify_client_equilibrium)
from .lp import solve
from .scalar import ONE, ZERO, Scalar, as_scalar

log = logging.getLogger(__name__)

__all__ = [
    "PartialCertificate", "Move", "DynamicsStep", "DynamicsTrace", "DeviationWitness",
    "ProfileWitness", "SpeDecision", "FppReport", "check_alpha", "deviations",
    "build_certificate", "improving_moves", "find_spe", "verify_spe", "k_approx_spe",
    "spe_exists", "stabilizing_certificate",
]

Move = namedtuple("Move", "facility target old new")
DeviationWitness = namedtuple("DeviationWitness", "facility vertex old new factor")
DeviationWitness.__doc__ = "Facility gains ``new > alpha*old``; ``factor`` is None when ``old`` is 0."
ProfileWitness = namedtuple("ProfileWitness", "placement violation")


def check_alpha(alpha) -> Scalar:
    alpha = as_scalar(alpha)
    if alpha < 1:
        raise InputError(f"approximation factor must be at least 1, got {alpha}")
    return alpha


def deviations(inst: Instance, s):
    """Yield ``(facility, vertex, placement)`` for every single-facility move, in id order."""
    for f in range(inst.k):
        for v in inst.allowed_sorted(f):
            if v != s[f]:
                yield f, v, s[:f] + (v,) + s[f + 1:]


@dataclass(frozen=True)
class PartialCertificate:
    base: tuple
    profiles: dict
    policy: str = "explicit"

    def profile(self, s) -> ClientProfile:
        try:
            return self.profiles[tuple(s)]
        except KeyError:
            raise CertificateError(f"certificate has no profile for placement {tuple(s)}") from None

    def loads(self, inst, s) -> tuple:
        return tuple(profile_loads(inst, self.profile(s)))


def build_certificate(inst: Instance, s, policy: FullProfilePolicy) -> PartialCertificate:
    s = check_placement(inst, s)
    profiles = {s: policy(s)}
    for _, _, s2 in deviations(inst, s):
        profiles[s2] = policy(s2)
    return PartialCertificate(s, profiles, policy.kind)


def _moves(inst, s, loads_at, alpha):
    base = loads_at(s)
    for f, v, s2 in deviations(inst, s):
        new = loads_at(s2)[f]
        if new > alpha * base[f]:
            yield Move(f, v, base[f], new)


def improving_moves(inst: Instance, s, policy: FullProfilePolicy, alpha=1) -> list:
    """All deviations raising the mover's load above ``alpha`` times its current load."""
    s = check_placement(inst, s)
    return list(_moves(inst, s, policy.loads, check_alpha(alpha)))


@dataclass(frozen=True)
class DynamicsStep:
    mover: int
    source: int
    target: int
    sort_before: tuple
    sort_after: tuple
    pi: tuple


@dataclass
class DynamicsTrace:
    start: tuple
    steps: list = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.steps)


def find_spe(inst: Instance, max_iterations: int = None):
    """Run the improving-move dynamic with favoring client equilibria.

    Starts with every facility on its lowest allowed vertex and a rounded
    policy.  After each move the facilities are ranked by decreasing load
    (ties by id) and the policy becomes favoring for that ranking, which
    makes the sorted load vector a strictly increasing potential from the
    second move on.  Returns ``(placement, certificate, trace)``.
    """
    if not inst.unweighted:
        raise UnsupportedModeError("find_spe needs unit client weights")
    k = inst.k
    s = tuple(min(a) for a in inst.allowed)
    policy = RoundedPolicy(inst)
    trace = DynamicsTrace(s)
    # the potential never repeats, so no placement is visited twice
    cap = prod(len(a) for a in inst.allowed) + 1 if max_iterations is None else max_iterations
    while True:
        move = next(_moves(inst, s, policy.loads, ONE), None)
        if move is None:
            break
        if trace.iterations >= cap:
            raise InvariantError(f"find_spe exceeded {cap} iterations")
        new_s = s[:move.facility] + (move.target,) + s[move.facility + 1:]
        before = tuple(sorted(policy.loads(s)))
        loads = policy.loads(new_s)
        after = tuple(sorted(loads))
        if trace.iterations >= 1 and not after > before:
            raise InvariantError(f"sorted loads did not increase: {before} -> {after}")
        pi = tuple(sorted(range(k), key=lambda f: (-loads[f], f)))
        policy = FavoringPolicy(inst, pi)
        switched = policy.loads(new_s)
        if tuple(sorted(switched)) != after:
            raise InvariantError("switching rounded profiles changed the sorted loads")
        if any(switched[pi[i]] < switched[pi[i + 1]] for i in range(k - 1)):
            raise InvariantError("favoring profile loads are not ordered by pi")
        trace.steps.append(DynamicsStep(move.facility, s[move.facility], move.target,
                                        before, after, pi))
        log.debug("move %s: %s -> %s, sorted loads %s -> %s", move.facility,
                  s[move.facility], move.target, before, after)
        s = new_s
    log.info("find_spe finished after %d iterations", trace.iterations)
    return s, build_certificate(inst, s, policy), trace


def verify_spe(inst: Instance, cert: PartialCertificate, alpha=1):
    """Return ``None`` for an (alpha-approximate) SPE, else the first witness.

    Stored profiles are checked first (:class:`ProfileWitness`), then
    deviations in (facility, vertex) order (:class:`DeviationWitness`).
    """
    alpha = check_alpha(alpha)
    s = check_placement(inst, cert.base)
    needed = [s] + [s2 for _, _, s2 in deviations(inst, s)]
    for s2 in needed:
        bad = verify_client_equilibrium(inst, s2, cert.profile(s2))
        if bad is not None:
            return ProfileWitness(s2, bad)
    base = cert.loads(inst, s)
    for f, v, s2 in deviations(inst, s):
        new = cert.loads(inst, s2)[f]
        if new > alpha * base[f]:
            factor = new / base[f] if base[f] else None
            return DeviationWitness(f, v, base[f], new, factor)
    return None


def reach(inst: Instance, v: int) -> Scalar:
    """Total weight of the clients that can see a facility placed on ``v``."""
    return inst.graph.weight_of(inst.graph.reached_by(v))


def k_approx_spe(inst: Instance):
    """Every facility on its highest-reach allowed vertex, clients mixing uniformly.

    Each deviation profile is a greedy pure equilibrium; a deviating facility
    then gets at most the reach of its new vertex, which is at most ``k``
    times its base load.  The uniform base profile is an equilibrium when all
    facilities share a vertex (always the case for unrestricted instances);
    otherwise a greedy equilibrium is used, without the factor-k guarantee.
    """
    s = tuple(max(inst.allowed_sorted(f), key=lambda v: (reach(inst, v), -v))
              for f in range(inst.k))
    greedy = GreedyPolicy(inst)
    base = uniform_profile(inst, s)
    tag = "uniform"
    if verify_client_equilibrium(inst, s, base) is not None:
        base = greedy(s)
        tag = "greedy"
    profiles = {s: base}
    for _, _, s2 in deviations(inst, s):
        profiles[s2] = greedy(s2)
    return s, PartialCertificate(s, profiles, f"{tag} base, greedy-weighted deviations")


# --------------------------------------------------------------------------
# exact existence search


@dataclass(frozen=True)
class FppReport:
    """Why a placement cannot be stabilized.

    ``required[f]`` is the load ``f`` can secure by its best deviation when
    every deviation subgame uses the equilibrium worst for ``f``; a base
    profile needs ``alpha * load_f >= required[f]`` for all ``f``.
    """

    placement: tuple
    required: tuple
    patterns: int


@dataclass(frozen=True)
class SpeDecision:
    exists: bool
    placement: tuple = None
    certificate: PartialCertificate = None
    reports: tuple = ()


class _Search:
    def __init__(self, inst, guard_clients, guard_facilities):
        self.inst = inst
        self.guard = (guard_clients, guard_facilities)
        self._polys = {}
        self._mins = {}

    def polytopes(self, s):
        if s not in self._polys:
            self._polys[s] = enumerate_equilibria(self.inst, s, *self.guard, reduce=False)
        return self._polys[s]

    def min_load(self, s, f):
        """Minimal load of ``f`` over all client equilibria of ``s`` and a profile attaining it."""
        key = (s, f)
        if key not in self._mins:
            best = None
            for poly in self.polytopes(s):
                res = solve(poly.lp, poly.load_expr(self.inst, f))
                if best is None or res.value < best[0]:
                    best = (res.value, poly.profile(self.inst, res.x))
            self._mins[key] = best
        return self._mins[key]


def stabilizing_certificate(inst: Instance, s, alpha=1, guard_clients=8, guard_facilities=3,
                            _search=None):
    """Certificate making ``s`` an alpha-approximate SPE, or an :class:`FppReport`."""
    alpha = check_alpha(alpha)
    s = check_placement(inst, s)
    search = _search or _Search(inst, guard_clients, guard_facilities)
    required = [ZERO] * inst.k
    chosen = {}
    for f, v, s2 in deviations(inst, s):
        value, profile = search.min_load(s2, f)
        chosen[s2] = profile
        if value > required[f]:
            required[f] = value
    polys = search.polytopes(s)
    for poly in polys:
        lp = poly.lp.copy()
        for f in range(inst.k):
            lp.add({j: alpha * c for j, c in poly.load_expr(inst, f).items()}, ">=", required[f])
        res = solve(lp)
        if res.feasible:
            profiles = {s: poly.profile(inst, res.x), **chosen}
            cert = PartialCertificate(s, profiles, "exact search")
            if verify_spe(inst, cert, alpha) is not None:
                raise InvariantError(f"exact search produced an invalid certificate at {s}")
            return cert
    return FppReport(s, tuple(required), len(polys))


def spe_exists(inst: Instance, alpha=1, guard_fpps: int = 200, guard_clients: int = 8,
               guard_facilities: int = 3) -> SpeDecision:
    """Decide exactly whether an alpha-approximate SPE exists (micro instances).

    For each base placement (in lexicographic order) the deviation
    subgames are decoupled: each deviation placement independently picks
    the client equilibrium minimizing the mover's load (an exact LP over
    every support pattern), and the base placement needs one equilibrium
    meeting all resulting lower bounds.  Returns the first stabilizable
    placement with its certificate, or all per-placement reports.
    """
    alpha = check_alpha(alpha)
    spaces = [inst.allowed_sorted(f) for f in range(inst.k)]
    total = prod(len(x) for x in spaces)
    if total > guard_fpps:
        raise GuardExceeded(f"{total} placements exceed the guard {guard_fpps}")
    search = _Search(inst, guard_clients, guard_facilities)
    reports = []
    for s in product(*spaces):
        out = stabilizing_certificate(inst, s, alpha, _search=search)
        if isinstance(out, PartialCertificate):
            return SpeDecision(True, s, out, tuple(reports))
        reports.append(out)
    return SpeDecision(False, reports=tuple(reports))
