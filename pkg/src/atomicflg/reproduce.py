"""Reference reproductions: each check compares known values with freshly computed ones."""
from __future__ import annotations

from collections import namedtuple
from fractions import Fraction

from .analysis import core_spe_certificate, poa_certificate, reach_table
from .classes import class_set
from .client_eq import GreedyPolicy, assignment_loads, enumerate_equilibria, favoring_profile
from .instances import fig3, fig5_left, fig5_right, fig6, fig8, obs2
from .scalar import GOLDEN_RATIO as PHI
from .scalar import Scalar
from .spe import build_certificate, spe_exists, verify_spe

__all__ = ["Row", "CHECKS", "run_check"]

Row = namedtuple("Row", "label expected computed ok")


def _row(label, expected, computed):
    return Row(label, expected, computed, expected == computed)


def _fmt(values) -> str:
    return "(" + ", ".join(str(Scalar(x) if not isinstance(x, Scalar) else x) for x in values) + ")"


def check_fig3():
    inst = fig3()
    cs = class_set(inst, (0, 1, 2))
    parts = " / ".join("{" + ",".join(inst.graph.names[v] for v in sorted(c.facilities)) + "}"
                       for c in cs.classes)
    return [
        _row("class count", "2", str(len(cs.classes))),
        _row("class loads", "(5/2, 4)", _fmt(cs.loads())),
        _row("facility partition", "{f1,f2} / {f3}", parts),
    ]


# placement -> pinned load pairs in sorted order, or the load range of a continuum
TABLE1 = {
    (0, 0): "family 0..3",
    (0, 1): "(3, 2)",
    (0, 2): "(3, 1)",
    (1, 0): "(2, 3)",
    (1, 1): "(2, 3); (3, 2); (5/2, 5/2)",
    (1, 2): "(2, 4)",
    (2, 0): "(1, 3)",
    (2, 1): "(4, 2)",
    (2, 2): "(1, 3); (2, 2); (3, 1)",
}


def _describe_equilibria(inst, s):
    polys = enumerate_equilibria(inst, s)
    pinned, families = [], []
    for poly in polys:
        ranges = [poly.load_range(inst, f) for f in range(inst.k)]
        if all(lo == hi for lo, hi in ranges):
            pinned.append(_fmt(lo for lo, _ in ranges))
        else:
            families.append(ranges)
    if families:
        if len(polys) == 1 and len(families) == 1:
            lo, hi = families[0][0]
            return f"family {lo}..{hi}"
        return f"{len(families)} families + " + "; ".join(sorted(pinned))
    return "; ".join(sorted(pinned))


def check_table1():
    inst = fig5_left()
    names = inst.graph.names
    rows = []
    for s, expected in TABLE1.items():
        label = "(" + ", ".join(names[v] for v in s) + ")"
        rows.append(_row(label, expected, _describe_equilibria(inst, s)))
    return rows


def check_table3():
    eps = Fraction(1, 100)
    inst = fig5_right(eps)
    expected = [2, 2 - Scalar(eps), PHI, PHI ** 2 / 2, 2 / PHI, 2 - 2 / PHI]
    table = reach_table(inst, 0)
    return [_row(f"reach {inst.graph.names[v]}", str(Scalar(e) if not isinstance(e, Scalar) else e),
                 str(table[v])) for v, e in enumerate(expected)]


def check_no_spe():
    d = spe_exists(fig5_left(), 1)
    return [_row("SPE exists (alpha = 1)", "none", "exists" if d.exists else "none")]


def check_no_approx_spe():
    eps = Fraction(1, 100)
    inst = fig5_right(eps)
    alpha = PHI - Fraction(1, 10)
    d = spe_exists(inst, alpha)
    cert = build_certificate(inst, (0, 4), GreedyPolicy(inst))
    w = verify_spe(inst, cert, alpha)
    witness = None if w is None else f"facility {w.facility} -> {inst.graph.names[w.vertex]}, factor {w.factor}"
    expected = f"facility 1 -> v2, factor {PHI * (1 - eps / 2)}"
    return [
        _row("approximate SPE exists (alpha = phi - 1/10)", "none", "exists" if d.exists else "none"),
        _row("witness at (v1, v5)", expected, str(witness)),
    ]


def check_fig8():
    rows = []
    for k in range(2, 6):
        inst = fig8(k)
        cert = core_spe_certificate(inst)
        verdict = verify_spe(inst, cert, 1)
        rows.append(_row(f"k={k} core placement is an SPE", "ok", "ok" if verdict is None else str(verdict)))
        if verdict is None:
            rows.append(_row(f"k={k} welfare ratio", "2", str(poa_certificate(inst, cert).ratio)))
    return rows


def check_obs2():
    inst = obs2()
    polys = enumerate_equilibria(inst, (0, 0))
    desc = [" x ".join(f"[{lo}, {hi}]" for lo, hi in (poly.load_range(inst, f) for f in range(2)))
            for poly in polys]
    expected = "[0, 1] x [0, 1]"
    return [
        _row("equilibrium families", "1", str(len(polys))),
        _row("load ranges", expected, desc[0] if len(desc) == 1 else str(desc)),
    ]


def check_fig6():
    inst = fig6()
    out = []
    for pi, expected in [((0, 1), "(2, 1)"), ((1, 0), "(1, 2)")]:
        loads = assignment_loads(inst, favoring_profile(inst, (0, 1), pi))
        out.append(_row(f"favoring loads, pi = {pi}", expected, _fmt(loads)))
    return out


CHECKS = {
    "fig3": check_fig3, "table1": check_table1, "table3": check_table3,
    "no-spe": check_no_spe, "no-approx-spe": check_no_approx_spe, "fig8": check_fig8,
    "obs2": check_obs2, "fig6": check_fig6,
}


def run_check(name: str) -> list:
    return CHECKS[name]()
