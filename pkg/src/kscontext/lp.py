"""Exact two-phase simplex over the rationals, Bland's anti-cycling rule.

Problems are in standard form::

    minimise  c.x   subject to  A x = b,  x >= 0

Infeasible problems come back with a Farkas certificate ``y`` satisfying
``y.A <= 0`` componentwise and ``y.b > 0``, which anyone can check without
trusting the solver (see :func:`check_farkas`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list | None = None
    value: Fraction | None = None
    farkas: list | None = None


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c):
        row = self.rows[r]
        inv = 1 / row[c]
        self.rows[r] = row = [v * inv for v in row]
        self.rhs[r] *= inv
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                f = other[c]
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def reduced_costs(self, cost):
        rc = list(cost)
        for r, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb != 0:
                rc = [a - cb * b for a, b in zip(rc, self.rows[r])]
        return rc

    def objective(self, cost):
        return sum((cost[bv] * self.rhs[r] for r, bv in enumerate(self.basis)), Fraction(0))

    def run(self, cost, allowed):
        """Bland's rule iterations; returns False when unbounded."""
        while True:
            rc = self.reduced_costs(cost)
            entering = next((j for j in allowed if rc[j] < 0), None)
            if entering is None:
                return True
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return False
            self.pivot(best[1], entering)


def solve_lp(c, a_eq, b_eq) -> LPResult:
    """Minimise ``c.x`` over ``{x >= 0 : a_eq x = b_eq}`` exactly."""
    m = len(a_eq)
    n = len(c)
    c = [Fraction(v) for v in c]
    if m == 0:
        if any(v < 0 for v in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, [Fraction(0)] * n, Fraction(0))

    signs = []
    rows = []
    rhs = []
    for row, bi in zip(a_eq, b_eq):
        s = -1 if Fraction(bi) < 0 else 1
        signs.append(s)
        rows.append([s * Fraction(v) for v in row] + [Fraction(int(i == len(rows))) for i in range(m)])
        rhs.append(s * Fraction(bi))
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    tab.run(phase1, range(n + m))
    if tab.objective(phase1) > 0:
        rc = tab.reduced_costs(phase1)
        y = [signs[i] * (1 - rc[n + i]) for i in range(m)]
        return LPResult(INFEASIBLE, farkas=y)

    # Drive zero-valued artificials out of the basis; drop redundant rows.
    r = 0
    while r < len(tab.basis):
        if tab.basis[r] >= n:
            col = next((j for j in range(n) if tab.rows[r][j] != 0), None)
            if col is None:
                del tab.rows[r]
                del tab.rhs[r]
                del tab.basis[r]
                continue
            tab.pivot(r, col)
        r += 1

    cost = c + [Fraction(0)] * m
    if not tab.run(cost, range(n)):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for r, bv in enumerate(tab.basis):
        x[bv] = tab.rhs[r]
    return LPResult(OPTIMAL, x, sum((ci * xi for ci, xi in zip(c, x)), Fraction(0)))


def check_farkas(a_eq, b_eq, y) -> bool:
    """True iff ``y`` proves ``{x >= 0 : A x = b}`` empty."""
    if len(y) != len(a_eq):
        return False
    n = len(a_eq[0]) if a_eq else 0
    for j in range(n):
        if sum(Fraction(y[i]) * Fraction(a_eq[i][j]) for i in range(len(a_eq))) > 0:
            return False
    return sum(Fraction(yi) * Fraction(bi) for yi, bi in zip(y, b_eq)) > 0


def feasible_point(a_eq, b_eq) -> LPResult:
    return solve_lp([0] * (len(a_eq[0]) if a_eq else 0), a_eq, b_eq)
