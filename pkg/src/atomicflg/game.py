"""Core data model: host graphs, instances, placements and client profiles.

Vertices and facilities are dense integer ids in input order.  Every
tie-break in the package prefers the smaller id.
"""
from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import FeasibilityError, InputError, UncoveredClientError
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "HostGraph", "Instance", "ClientProfile", "LoadReport", "Violation",
    "FullProfilePolicy", "check_placement", "check_permutation",
    "shopping_range", "attraction_range", "covered_clients", "participation",
    "facility_loads", "excluded_load", "waiting_time",
    "verify_client_equilibrium", "client_violations", "pi_loads", "uniform_profile",
    "profile_loads", "check_feasible", "TablePolicy", "UniformPolicy", "shopping_ranges",
]

Violation = namedtuple("Violation", "client facility better")
Violation.__doc__ = "Client ``client`` patronizes ``facility`` but ``better`` has smaller excluded load."


@dataclass(frozen=True)
class HostGraph:
    weights: tuple
    edges: frozenset
    names: tuple = None
    _nbhd: tuple = field(init=False, repr=False, compare=False)
    _pred: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.weights)
        weights = tuple(as_scalar(w) for w in self.weights)
        for v, w in enumerate(weights):
            if w.sign() <= 0:
                raise InputError(f"weight of vertex {v} must be positive, got {w}")
        names = tuple(str(i) for i in range(n)) if self.names is None else tuple(self.names)
        if len(names) != n or len(set(names)) != n:
            raise InputError("vertex names must be unique, one per vertex")
        edges = frozenset((int(a), int(b)) for a, b in self.edges)
        nbhd = [{v} for v in range(n)]
        pred = [{v} for v in range(n)]
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise InputError(f"edge ({a}, {b}) has an unknown endpoint")
            if a == b:
                raise InputError(f"self-loop at vertex {a}: v is always in N(v)")
            nbhd[a].add(b)
            pred[b].add(a)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_nbhd", tuple(frozenset(x) for x in nbhd))
        object.__setattr__(self, "_pred", tuple(frozenset(x) for x in pred))

    @classmethod
    def build(cls, weights, edges=(), names=None) -> "HostGraph":
        """Build from weights and edges given either as ids or as names."""
        if isinstance(weights, Mapping):
            names = list(weights)
            weights = [weights[x] for x in names]
        index = {name: i for i, name in enumerate(names)} if names is not None else {}

        def vid(x):
            if isinstance(x, int):
                return x
            try:
                return index[x]
            except KeyError:
                raise InputError(f"unknown vertex {x!r}") from None

        return cls(tuple(weights), frozenset((vid(a), vid(b)) for a, b in edges), names)

    @property
    def n(self) -> int:
        return len(self.weights)

    def neighborhood(self, v: int) -> frozenset:
        """``N(v)``: ``v`` together with its out-neighbors."""
        self._check_vertex(v)
        return self._nbhd[v]

    def reached_by(self, u: int) -> frozenset:
        """All clients ``v`` with ``u`` in ``N(v)``."""
        self._check_vertex(u)
        return self._pred[u]

    def weight_of(self, vertices: Iterable[int]) -> Scalar:
        total = ZERO
        for v in vertices:
            total = total + self.weights[v]
        return total

    def total_weight(self) -> Scalar:
        return self.weight_of(range(self.n))

    def vertex(self, name) -> int:
        if isinstance(name, int):
            self._check_vertex(name)
            return name
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown vertex {name!r}") from None

    def _check_vertex(self, v):
        if not isinstance(v, int) or not 0 <= v < len(self.weights):
            raise InputError(f"unknown vertex id {v!r}")


@dataclass(frozen=True)
class Instance:
    """The triple ``(H, U, k)``; ``allowed[f]`` is ``U(f)``."""

    graph: HostGraph
    k: int
    allowed: tuple = None

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise InputError(f"facility count must be a positive integer, got {self.k!r}")
        everything = frozenset(range(self.graph.n))
        if self.allowed is None:
            allowed = (everything,) * self.k
        else:
            allowed = tuple(frozenset(a) for a in self.allowed)
        if len(allowed) != self.k:
            raise InputError(f"expected {self.k} allowed sets, got {len(allowed)}")
        for f, a in enumerate(allowed):
            if not a:
                raise InputError(f"allowed set of facility {f} is empty")
            if not a <= everything:
                raise InputError(f"allowed set of facility {f} contains unknown vertices")
        object.__setattr__(self, "allowed", allowed)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def unrestricted(self) -> bool:
        return all(len(a) == self.graph.n for a in self.allowed)

    @property
    def unweighted(self) -> bool:
        return all(w == ONE for w in self.graph.weights)

    def allowed_sorted(self, f: int) -> list:
        return sorted(self.allowed[f])


def check_placement(inst: Instance, s: Sequence[int]) -> tuple:
    s = tuple(s)
    if len(s) != inst.k:
        raise InputError(f"placement has {len(s)} entries, instance has k={inst.k}")
    for f, v in enumerate(s):
        if v not in inst.allowed[f]:
            raise InputError(f"facility {f} may not be placed on vertex {v!r}")
    return s


def check_permutation(pi: Sequence[int], k: int) -> tuple:
    pi = tuple(pi)
    if sorted(pi) != list(range(k)):
        raise InputError(f"{pi!r} is not a permutation of the {k} facilities")
    return pi


def shopping_range(inst: Instance, s: Sequence[int], v: int) -> frozenset:
    """Facilities located on ``v`` or on one of its out-neighbors."""
    nb = inst.graph.neighborhood(v)
    return frozenset(f for f, loc in enumerate(s) if loc in nb)


def attraction_range(inst: Instance, s: Sequence[int], f: int) -> frozenset:
    """Clients that may patronize facility ``f``."""
    if not 0 <= f < len(s):
        raise InputError(f"facility index {f!r} out of range")
    return inst.graph.reached_by(s[f])


def shopping_ranges(inst: Instance, s: Sequence[int]) -> list:
    return [shopping_range(inst, s, v) for v in range(inst.n)]


def covered_clients(inst: Instance, s: Sequence[int]) -> list:
    locs = set(s)
    return [v for v in range(inst.n) if inst.graph.neighborhood(v) & locs]


def participation(inst: Instance, s: Sequence[int]) -> Scalar:
    """Weighted participation rate: total weight of covered clients."""
    return inst.graph.weight_of(covered_clients(inst, s))


@dataclass(frozen=True)
class ClientProfile:
    """Client strategies for one placement: ``rows[v][f]`` is a probability."""

    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(as_scalar(p) for p in r) for r in self.rows))

    @classmethod
    def from_assignment(cls, inst: Instance, assign: Mapping[int, int]) -> "ClientProfile":
        rows = [[ZERO] * inst.k for _ in range(inst.n)]
        for v, f in assign.items():
            rows[v][f] = ONE
        return cls(tuple(tuple(r) for r in rows))

    @property
    def pure(self) -> bool:
        return all(p == ZERO or p == ONE for r in self.rows for p in r)

    def prob(self, v: int, f: int) -> Scalar:
        return self.rows[v][f]

    def support(self, v: int) -> frozenset:
        return frozenset(f for f, p in enumerate(self.rows[v]) if p)

    def assignment(self) -> dict:
        """Client -> facility map of a pure profile (uncovered clients omitted)."""
        if not self.pure:
            raise ValueError("profile is mixed")
        return {v: r.index(ONE) for v, r in enumerate(self.rows) if ONE in r}


def uniform_profile(inst: Instance, s: Sequence[int]) -> ClientProfile:
    rows = []
    for v in range(inst.n):
        rng = shopping_range(inst, s, v)
        p = ONE / len(rng) if rng else ZERO
        rows.append(tuple(p if f in rng else ZERO for f in range(inst.k)))
    return ClientProfile(tuple(rows))


def check_feasible(inst: Instance, s: Sequence[int], sigma: ClientProfile) -> None:
    if len(sigma.rows) != inst.n or any(len(r) != inst.k for r in sigma.rows):
        raise FeasibilityError("profile shape does not match the instance", condition="shape")
    for v, row in enumerate(sigma.rows):
        rng = shopping_range(inst, s, v)
        total = ZERO
        for f, p in enumerate(row):
            if p < 0 or p > 1:
                raise FeasibilityError(
                    f"client {v}: probability {p} for facility {f} outside [0, 1]",
                    client=v, condition="range")
            if p and f not in rng:
                raise FeasibilityError(
                    f"client {v}: positive probability on facility {f} outside its shopping range",
                    client=v, condition="(i)")
            total = total + p
        if rng and total != ONE:
            raise FeasibilityError(f"client {v}: probabilities sum to {total}, not 1",
                                   client=v, condition="(ii)")


@dataclass(frozen=True)
class LoadReport:
    load: tuple
    sorted: tuple
    participation: Scalar


def profile_loads(inst: Instance, sigma: ClientProfile) -> list:
    """Facility loads without feasibility checks."""
    loads = [ZERO] * inst.k
    w = inst.graph.weights
    for v, row in enumerate(sigma.rows):
        for f, p in enumerate(row):
            if p:
                loads[f] = loads[f] + p * w[v]
    return loads


def facility_loads(inst: Instance, s: Sequence[int], sigma: ClientProfile) -> LoadReport:
    check_feasible(inst, s, sigma)
    loads = tuple(profile_loads(inst, sigma))
    return LoadReport(loads, tuple(sorted(loads)), participation(inst, s))


def excluded_load(inst, s, sigma, v: int, f: int) -> Scalar:
    """Expected load of ``f`` contributed by all clients except ``v``."""
    check_feasible(inst, s, sigma)
    return profile_loads(inst, sigma)[f] - sigma.rows[v][f] * inst.graph.weights[v]


def waiting_time(inst, s, sigma, v: int) -> Scalar:
    rng = shopping_range(inst, s, v)
    if not rng:
        raise UncoveredClientError(f"client {v} has no facility in range; waiting time undefined")
    check_feasible(inst, s, sigma)
    loads = profile_loads(inst, sigma)
    w = inst.graph.weights[v]
    total = w
    for f in sorted(rng):
        p = sigma.rows[v][f]
        total = total + p * (loads[f] - p * w)
    return total


def _iter_violations(inst, s, sigma):
    check_feasible(inst, s, sigma)
    loads = profile_loads(inst, sigma)
    weights = inst.graph.weights
    for v in range(inst.n):
        rng = sorted(shopping_range(inst, s, v))
        if not rng:
            continue
        row = sigma.rows[v]
        excl = {g: loads[g] - row[g] * weights[v] for g in rng}
        best = min(excl.values())
        for f in rng:
            if row[f] and excl[f] > best:
                g = next(g for g in rng if excl[g] < excl[f])
                yield Violation(v, f, g)


def verify_client_equilibrium(inst: Instance, s: Sequence[int], sigma: ClientProfile):
    """Return ``None`` if ``sigma`` is a client equilibrium, else the first :class:`Violation`.

    Raises :class:`FeasibilityError` for infeasible profiles.
    """
    return next(_iter_violations(inst, s, sigma), None)


def client_violations(inst, s, sigma) -> list:
    return list(_iter_violations(inst, s, sigma))


def pi_loads(report, pi: Sequence[int]) -> tuple:
    """Loads in the order ``pi``; compare results as tuples for lexicographic order."""
    loads = report.load if isinstance(report, LoadReport) else tuple(report)
    pi = check_permutation(pi, len(loads))
    return tuple(loads[f] for f in pi)


class FullProfilePolicy:
    """A deterministic rule giving a client profile for every placement.

    Results are memoized per placement, so repeated evaluation is identical.
    Subclasses implement :meth:`_evaluate`.
    """

    kind = "abstract"

    def __init__(self, inst: Instance):
        self.inst = inst
        self._cache = {}

    def __call__(self, s: Sequence[int]) -> ClientProfile:
        s = tuple(s)
        try:
            return self._cache[s]
        except KeyError:
            pass
        check_placement(self.inst, s)
        sigma = self._evaluate(s)
        self._cache[s] = sigma
        return sigma

    def loads(self, s) -> tuple:
        return tuple(profile_loads(self.inst, self(s)))

    def _evaluate(self, s) -> ClientProfile:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.kind}>"


class TablePolicy(FullProfilePolicy):
    """Explicit profiles for some placements, ``fallback`` for the rest."""

    kind = "fixed-table"

    def __init__(self, inst, table: Mapping, fallback: FullProfilePolicy = None):
        super().__init__(inst)
        self.table = {tuple(k): v for k, v in table.items()}
        self.fallback = fallback

    def _evaluate(self, s):
        if s in self.table:
            return self.table[s]
        if self.fallback is None:
            raise KeyError(f"no profile stored for placement {s}")
        return self.fallback(s)


class UniformPolicy(FullProfilePolicy):
    kind = "uniform"

    def _evaluate(self, s):
        return uniform_profile(self.inst, s)
