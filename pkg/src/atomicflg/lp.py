"""Exact linear programming over Q(sqrt 5).

A dense two-phase tableau simplex with Bland's rule, so it terminates on
degenerate problems.  All variables are nonnegative.  Used for client
equilibrium polytopes and for the SPE existence search, where the golden
ratio counterexample rules out floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = ["LinearProgram", "LPResult", "solve"]


@dataclass
class LinearProgram:
    n_vars: int
    rows: list = field(default_factory=list)

    def add(self, coeffs: dict, sense: str, rhs=0) -> None:
        """Add ``sum(coeffs[j] * x_j) sense rhs`` with sense in ``<=``, ``>=``, ``==``."""
        if sense not in ("<=", ">=", "=="):
            raise ValueError(f"bad constraint sense {sense!r}")
        clean = {}
        for j, c in coeffs.items():
            if not 0 <= j < self.n_vars:
                raise ValueError(f"variable {j} out of range")
            c = as_scalar(c)
            if c:
                clean[j] = clean.get(j, ZERO) + c
        self.rows.append((clean, sense, as_scalar(rhs)))

    def copy(self) -> "LinearProgram":
        return LinearProgram(self.n_vars, list(self.rows))


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: tuple = None
    value: Scalar = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


class _Tableau:
    def __init__(self, A, b, basis, n_cols):
        self.A = A
        self.b = b
        self.basis = basis
        self.n_cols = n_cols

    def pivot(self, r, j):
        row = self.A[r]
        p = row[j]
        if p != ONE:
            inv = ONE / p
            self.A[r] = row = [x * inv if x else x for x in row]
            self.b[r] = self.b[r] * inv
        for i, other in enumerate(self.A):
            if i == r:
                continue
            f = other[j]
            if f:
                self.A[i] = [o - f * x if x else o for o, x in zip(other, row)]
                self.b[i] = self.b[i] - f * self.b[r]
        self.basis[r] = j

    def optimize(self, cost, allowed):
        """Minimize ``cost . x`` over the current basis; return status."""
        z = list(cost)
        zval = ZERO
        for r, j in enumerate(self.basis):
            c = z[j]
            if c:
                row = self.A[r]
                z = [zz - c * x if x else zz for zz, x in zip(z, row)]
                zval = zval - c * self.b[r]
        while True:
            entering = next((j for j in range(self.n_cols) if allowed[j] and z[j].sign() < 0), None)
            if entering is None:
                return "optimal", -zval
            best = None
            for r, row in enumerate(self.A):
                a = row[entering]
                if a.sign() > 0:
                    ratio = self.b[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return "unbounded", None
            r = best[1]
            self.pivot(r, entering)
            row = self.A[r]
            c = z[entering]
            z = [zz - c * x if x else zz for zz, x in zip(z, row)]
            zval = zval - c * self.b[r]


def solve(lp: LinearProgram, objective: dict = None, maximize: bool = False) -> LPResult:
    """Solve ``min/max objective . x`` subject to ``lp`` and ``x >= 0``.

    With ``objective=None`` only feasibility is decided (phase 1).
    """
    n = lp.n_vars
    rows = []
    for coeffs, sense, rhs in lp.rows:
        if rhs.sign() < 0:
            coeffs = {j: -c for j, c in coeffs.items()}
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
        rows.append((coeffs, sense, rhs))
    n_slack = sum(1 for _, sense, _ in rows if sense != "==")
    n_art = sum(1 for _, sense, _ in rows if sense != "<=")
    n_cols = n + n_slack + n_art
    A, b, basis = [], [], []
    slack = n
    art = n + n_slack
    for coeffs, sense, rhs in rows:
        row = [ZERO] * n_cols
        for j, c in coeffs.items():
            row[j] = c
        if sense == "<=":
            row[slack] = ONE
            basis.append(slack)
            slack += 1
        elif sense == ">=":
            row[slack] = -ONE
            slack += 1
            row[art] = ONE
            basis.append(art)
            art += 1
        else:
            row[art] = ONE
            basis.append(art)
            art += 1
        A.append(row)
        b.append(rhs)
    tab = _Tableau(A, b, basis, n_cols)
    first_art = n + n_slack
    if n_art:
        cost = [ZERO] * first_art + [ONE] * n_art
        status, value = tab.optimize(cost, [True] * n_cols)
        if value.sign() > 0:
            return LPResult("infeasible")
        # drive zero-valued artificials out of the basis
        r = 0
        while r < len(tab.A):
            if tab.basis[r] >= first_art:
                j = next((j for j in range(first_art) if tab.A[r][j]), None)
                if j is None:
                    del tab.A[r], tab.b[r], tab.basis[r]
                    continue
                tab.pivot(r, j)
            r += 1
    allowed = [j < first_art for j in range(n_cols)]
    if objective is None:
        x = _extract(tab, n)
        return LPResult("optimal", x, ZERO)
    cost = [ZERO] * n_cols
    for j, c in objective.items():
        c = as_scalar(c)
        cost[j] = -c if maximize else c
    status, value = tab.optimize(cost, allowed)
    if status == "unbounded":
        return LPResult("unbounded")
    return LPResult("optimal", _extract(tab, n), -value if maximize else value)


def _extract(tab, n):
    x = [ZERO] * n
    for r, j in enumerate(tab.basis):
        if j < n:
            x[j] = tab.b[r]
    return tuple(x)
