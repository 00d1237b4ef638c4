"""Social welfare: optimum placements, price-of-anarchy certificates and reach tables."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

from .client_eq import GreedyPolicy
from .errors import CertificateError, GuardExceeded, InputError, InvariantError
from .game import ClientProfile, Instance, check_placement, participation
from .instances import CnfFormula, sat_placement
from .scalar import Scalar
from .spe import PartialCertificate, build_certificate, deviations, reach, verify_spe

__all__ = [
    "WelfareReport", "optimum_placement", "poa_certificate", "reach_table",
    "core_spe_certificate", "sat_certificate",
]


@dataclass(frozen=True)
class WelfareReport:
    opt_placement: tuple
    opt_weight: Scalar
    state_weight: Scalar
    ratio: Scalar


def optimum_placement(inst: Instance, guard: int = 10 ** 6):
    """Placement covering the most client weight; ties go to the lexicographically smallest."""
    spaces = [inst.allowed_sorted(f) for f in range(inst.k)]
    total = prod(len(x) for x in spaces)
    if total > guard:
        raise GuardExceeded(f"{total} placements exceed the guard {guard}")
    covers = [inst.graph.reached_by(v) for v in range(inst.n)]
    best, best_w = None, None
    for s in product(*spaces):
        covered = frozenset().union(*(covers[v] for v in set(s)))
        w = inst.graph.weight_of(covered)
        if best_w is None or w > best_w:
            best, best_w = s, w
    return best, best_w


def poa_certificate(inst: Instance, cert: PartialCertificate, guard: int = 10 ** 6) -> WelfareReport:
    """Welfare ratio of the optimum against a verified SPE certificate."""
    witness = verify_spe(inst, cert, 1)
    if witness is not None:
        raise CertificateError(f"certificate is not a subgame perfect equilibrium: {witness}")
    opt, opt_w = optimum_placement(inst, guard)
    state_w = participation(inst, cert.base)
    if not state_w:
        # a lone facility always attracts its own vertex, so this cannot be an SPE
        raise InvariantError("an SPE covering no client weight")
    ratio = opt_w / state_w
    if ratio > 2:
        raise InvariantError(f"welfare ratio {ratio} exceeds 2")
    return WelfareReport(opt, opt_w, state_w, ratio)


def reach_table(inst: Instance, f: int) -> dict:
    """Client weight a facility would attract alone at each of its allowed vertices."""
    if not 0 <= f < inst.k:
        raise InputError(f"facility index {f!r} out of range")
    return {v: reach(inst, v) for v in inst.allowed_sorted(f)}


def core_spe_certificate(inst: Instance) -> PartialCertificate:
    """The half-covering equilibrium on the clique-with-pendants family.

    Expects the layout of :func:`instances.fig8`: core vertices ``0..k-1``
    and pendant ``k+i`` hanging off core vertex ``i``.  Facility ``i`` sits
    on core vertex ``i`` and serves exactly that vertex.  A move inside the
    core keeps every client where it was.  A move of ``f`` onto a pendant
    hands that pendant to ``f`` and sends the client ``f`` left behind to
    the lowest-id other facility.
    """
    k = inst.k
    if inst.n != 2 * k:
        raise InputError("core_spe_certificate needs the 2k-vertex clique-with-pendants layout")
    s = tuple(range(k))
    base = {i: i for i in range(k)}
    profiles = {s: ClientProfile.from_assignment(inst, base)}
    for f, v, s2 in deviations(inst, s):
        assign = dict(base)
        if v >= k:
            assign[v] = f
            assign[f] = 0 if f != 0 else 1
        profiles[s2] = ClientProfile.from_assignment(inst, assign)
    return PartialCertificate(s, profiles, "core placement, pendant deviations keep their pendant")


def sat_certificate(inst: Instance, formula: CnfFormula, assignment) -> PartialCertificate:
    """Certificate at the placement induced by a satisfying assignment, greedy profiles throughout."""
    if not formula.satisfied_by(assignment):
        raise InputError("assignment does not satisfy the formula")
    s = sat_placement(inst, formula, assignment)
    return build_certificate(inst, check_placement(inst, s), GreedyPolicy(inst))
