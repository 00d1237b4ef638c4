"""Instance generators: the reference constructions, random instances and the SAT gadget.

An edge ``(a, b)`` is the single arc ``a -> b``: ``a`` can shop at ``b``
but not the other way round.  Symmetric connections are listed as two arcs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .game import HostGraph, Instance, check_placement
from .scalar import GOLDEN_RATIO as PHI
from .scalar import Scalar, as_scalar

__all__ = [
    "NAMED_INSTANCES", "gen_paper_instance", "named_placement", "fig1", "fig2", "fig3",
    "fig5_left", "fig5_right", "fig5_right_weights", "fig6", "fig7_g3", "fig8", "obs2", "random_instance",
    "random_placement", "CnfFormula", "random_cnf", "reduce_sat", "sat_placement",
    "reduction_counts",
]

TINY = Fraction(1, 1000)


def fig1() -> Instance:
    """Two clients of weight 3 and 1 that both see two facility sites.

    The sites nominally carry weight 0, which the model forbids; they get
    weight 1/1000 instead, which keeps the same three equilibrium shapes.
    """
    g = HostGraph.build({"c1": 3, "c2": 1, "f1": TINY, "f2": TINY},
                        [("c1", "f1"), ("c1", "f2"), ("c2", "f1"), ("c2", "f2")])
    return Instance(g, 2)


def fig2() -> Instance:
    g = HostGraph.build({"a": 1, "b": 1, "v": 1, "d": 1, "u": 1},
                        [("b", "a"), ("v", "b"), ("d", "b"), ("u", "v")])
    return Instance(g, 3)


def fig3() -> Instance:
    names = ["f1", "f2", "f3", "v1", "v2", "v3", "v4", "v5", "v6"]
    edges = [("f1", "f2"), ("f2", "f1"), ("f2", "f3"), ("v1", "f1"), ("v2", "f1"),
             ("v2", "f2"), ("v3", "f2"), ("v4", "f3"), ("v5", "f3"), ("v6", "f3")]
    return Instance(HostGraph.build({x: 1 for x in names}, edges), 3)


def fig5_left() -> Instance:
    g = HostGraph.build({"w1": 3, "w2": 2, "w3": 1}, [("w1", "w2"), ("w1", "w3")])
    return Instance(g, 2)


def fig5_right_weights(eps) -> dict:
    eps = as_scalar(eps)
    if not (0 < eps < 2 - 2 / PHI):
        raise InputError(f"epsilon must lie in (0, 2 - 2/phi), got {eps}")
    inv = 2 / PHI
    # v5 carries +eps so that the reach of v5 is exactly 2/phi
    return {
        "v1": inv,
        "v2": 2 - inv - eps,
        "v3": PHI - inv,
        "v4": PHI ** 2 / 2 - inv,
        "v5": 4 * inv - 2 - PHI - PHI ** 2 / 2 + eps,
        "v6": 2 - inv,
    }


FIG5_RIGHT_EDGES = [("v1", "v2"), ("v1", "v3"), ("v1", "v4"), ("v2", "v5"),
                    ("v3", "v5"), ("v4", "v5"), ("v6", "v1")]


def fig5_right(eps=Fraction(1, 100)) -> Instance:
    return Instance(HostGraph.build(fig5_right_weights(eps), FIG5_RIGHT_EDGES), 2)


def fig7_g3(alpha) -> Instance:
    """The two-vertex gadget: ``v7`` (weight alpha) shops at ``v8`` (weight 2/(phi*alpha))."""
    alpha = as_scalar(alpha)
    if not (1 <= alpha < PHI):
        raise InputError(f"alpha must lie in [1, phi), got {alpha}")
    g = HostGraph.build({"v7": alpha, "v8": 2 / (PHI * alpha)}, [("v7", "v8")])
    return Instance(g, 1)


def fig6() -> Instance:
    g = HostGraph.build({"v1": 1, "v2": 1, "v3": 1}, [("v2", "v1"), ("v3", "v2")])
    return Instance(g, 2)


def fig8(k: int) -> Instance:
    """Core clique ``c1..ck`` (all arcs both ways) and pendant arcs ``c_i -> o_i``."""
    if not isinstance(k, int) or k < 2:
        raise InputError(f"fig8 needs k >= 2, got {k!r}")
    names = [f"c{i}" for i in range(1, k + 1)] + [f"o{i}" for i in range(1, k + 1)]
    edges = [(f"c{i}", f"c{j}") for i in range(1, k + 1) for j in range(1, k + 1) if i != j]
    edges += [(f"c{i}", f"o{i}") for i in range(1, k + 1)]
    return Instance(HostGraph.build({x: 1 for x in names}, edges), k)


def obs2() -> Instance:
    """One client and two facilities that can only sit on it."""
    return Instance(HostGraph.build({"v": 1}, []), 2)


NAMED_INSTANCES = {
    "fig1": fig1, "fig2": fig2, "fig3": fig3, "fig5_left": fig5_left,
    "fig5_right": fig5_right, "fig6": fig6, "fig7_g3": fig7_g3, "fig8": fig8, "obs2": obs2,
}

_PLACEMENTS = {
    "fig1": ("f1", "f2"),
    "fig2": ("a", "b", "v"),
    "fig3": ("f1", "f2", "f3"),
    "fig6": ("v1", "v2"),
    "obs2": ("v", "v"),
}


def gen_paper_instance(name: str, *, eps=Fraction(1, 100), alpha=Fraction(5, 4), k: int = 3) -> Instance:
    if name not in NAMED_INSTANCES:
        raise InputError(f"unknown instance family {name!r}; choose from {sorted(NAMED_INSTANCES)}")
    if name == "fig5_right":
        return fig5_right(eps)
    if name == "fig7_g3":
        return fig7_g3(alpha)
    if name == "fig8":
        return fig8(k)
    return NAMED_INSTANCES[name]()


def named_placement(name: str, inst: Instance) -> tuple:
    """The reference placement stored with a named instance (fig8: the half-covering core placement)."""
    if name == "fig8":
        return tuple(range(inst.k))
    try:
        locs = _PLACEMENTS[name]
    except KeyError:
        raise InputError(f"{name!r} has no reference placement") from None
    return check_placement(inst, [inst.graph.vertex(x) for x in locs])


# --------------------------------------------------------------------------
# random instances


def random_instance(rng: random.Random, n: int, k: int, density=0.3, weighted=False,
                    restricted=False) -> Instance:
    """Random digraph with independent arcs; weights from {1..4}/{1,2} when ``weighted``."""
    edges = [(a, b) for a in range(n) for b in range(n) if a != b and rng.random() < density]
    if weighted:
        weights = [Fraction(rng.randint(1, 4), rng.randint(1, 2)) for _ in range(n)]
    else:
        weights = [1] * n
    allowed = None
    if restricted:
        allowed = [frozenset(rng.sample(range(n), rng.randint(1, n))) for _ in range(k)]
    return Instance(HostGraph(tuple(weights), frozenset(edges)), k, allowed)


def random_placement(rng: random.Random, inst: Instance) -> tuple:
    return tuple(rng.choice(inst.allowed_sorted(f)) for f in range(inst.k))


# --------------------------------------------------------------------------
# SAT gadget


@dataclass(frozen=True)
class CnfFormula:
    """``m`` variables; each clause is a set of nonzero literals ``+i`` / ``-i`` (1-based)."""

    m: int
    clauses: tuple

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise InputError(f"variable count must be positive, got {self.m!r}")
        clauses = tuple(frozenset(c) for c in self.clauses)
        for i, c in enumerate(clauses):
            if not c:
                raise InputError(f"clause {i} is empty")
            for lit in c:
                if not isinstance(lit, int) or lit == 0 or abs(lit) > self.m:
                    raise InputError(f"clause {i} has bad literal {lit!r}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def t(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def random_cnf(rng: random.Random, m: int, t: int, width: int = 3) -> CnfFormula:
    clauses = []
    for _ in range(t):
        size = rng.randint(1, width)
        clauses.append({rng.choice((1, -1)) * rng.randint(1, m) for _ in range(size)})
    return CnfFormula(m, tuple(clauses))


def reduce_sat(formula: CnfFormula, alpha, eps) -> Instance:
    """Build the SPE-hardness instance for ``formula``.

    Vertices: ``y*``, ``n*``, clause vertices ``c*`` and buffer ``b*``
    (together V1), then ``v1..v6`` of the golden-ratio gadget and ``v7``,
    ``v8``.  Facilities: ``q1..qm`` restricted to V1 + v7, then ``g`` on
    ``v1..v6`` and ``h`` on ``v1..v6, v8``.
    """
    alpha = as_scalar(alpha)
    eps = as_scalar(eps)
    m, t = formula.m, formula.t
    if t < 4:
        raise InputError(f"the construction needs at least 4 clauses, got {t}")
    if not (1 < alpha < PHI):
        raise InputError(f"alpha must lie in (1, phi), got {alpha}")
    if not (0 < eps and eps < PHI - alpha and eps < 2 - 2 / PHI):
        raise InputError(f"epsilon must satisfy 0 < eps < min(phi - alpha, 2 - 2/phi), got {eps}")
    w1 = Scalar(Fraction(m, m * (t + 2) - 1))
    ys = [f"y{i}" for i in range(1, m + 1)]
    ns = [f"n{i}" for i in range(1, m + 1)]
    cs = [f"c{j}" for j in range(1, t + 1)]
    bs = [f"b{j}" for j in range(1, (m - 1) * t + 1)]
    weights = {x: w1 for x in ys + ns + cs + bs}
    weights.update(fig5_right_weights(eps))
    weights["v7"] = alpha
    weights["v8"] = 2 / (PHI * alpha)
    edges = []
    for y, n in zip(ys, ns):
        edges += [(n, y), (y, n)]
    for b in bs:
        edges += [(b, y) for y in ys] + [(b, n) for n in ns]
    for c, clause in zip(cs, formula.clauses):
        for lit in sorted(clause, key=lambda l: (abs(l), -l)):
            edges.append((c, ys[lit - 1] if lit > 0 else ns[-lit - 1]))
    edges += FIG5_RIGHT_EDGES + [("v7", "v8")]
    g = HostGraph.build(weights, edges)
    v1_side = frozenset(g.vertex(x) for x in ys + ns + cs + bs)
    gadget = frozenset(g.vertex(f"v{i}") for i in range(1, 7))
    allowed = [v1_side | {g.vertex("v7")}] * m
    allowed += [gadget, gadget | {g.vertex("v8")}]
    return Instance(g, m + 2, allowed)


def sat_placement(inst: Instance, formula: CnfFormula, assignment) -> tuple:
    """The placement used for a satisfying assignment: ``q_i`` on ``y_i`` or ``n_i``."""
    if len(assignment) != formula.m:
        raise InputError("assignment length differs from the variable count")
    g = inst.graph
    s = [g.vertex(f"y{i + 1}" if val else f"n{i + 1}") for i, val in enumerate(assignment)]
    s += [g.vertex("v1"), g.vertex("v8")]
    return check_placement(inst, s)


def reduction_counts(formula: CnfFormula) -> dict:
    """Closed-form sizes of the reduction output."""
    m, t = formula.m, formula.t
    v1 = 2 * m + t + (m - 1) * t
    literal_arcs = sum(len(c) for c in formula.clauses)
    return {
        "v1_vertices": v1,
        "vertices": v1 + 8,
        "edges": 2 * m + 2 * m * (m - 1) * t + literal_arcs + len(FIG5_RIGHT_EDGES) + 1,
        "facilities": m + 2,
        "v1_weight": Fraction(m, m * (t + 2) - 1),
    }
