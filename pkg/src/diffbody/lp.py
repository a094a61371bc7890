"""Dense exact simplex method (two phases, Bland's rule).

Problem sizes in this package are tiny, so a Fraction tableau is fine and
keeps every optimum exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(tab, basis, r, c):
    row = tab[r]
    p = row[c]
    if p != 1:
        row = [v / p for v in row]
        tab[r] = row
    for i, other in enumerate(tab):
        if i != r:
            f = other[c]
            if f:
                tab[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _run(tab, basis, cost_row, allowed):
    """Minimize; ``tab[cost_row]`` holds reduced costs with -objective last."""
    m = len(basis)
    while True:
        costs = tab[cost_row]
        enter = next((j for j in allowed if costs[j] < 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(tab, basis, best[1], enter)


def solve_standard(c, a_eq, b_eq) -> LPResult:
    """Minimize ``c.z`` subject to ``a_eq z = b_eq`` and ``z >= 0``."""
    n = len(c)
    m = len(a_eq)
    rows = []
    for row, b in zip(a_eq, b_eq):
        row = [Fraction(v) for v in row]
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
        rows.append((row, b))

    # columns: n originals, m artificials, rhs
    tab = []
    for i, (row, b) in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [b])
    basis = [n + i for i in range(m)]
    phase1 = [Fraction(0)] * (n + m + 1)
    for r in tab:
        for j in range(n):
            phase1[j] -= r[j]
        phase1[-1] -= r[-1]
    tab.append(phase1)
    _run(tab, basis, m, range(n))
    if tab[m][-1] != 0:
        return LPResult(INFEASIBLE)

    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= n:
            j = next((j for j in range(n) if tab[i][j] != 0), None)
            if j is None:
                del tab[i]
                del basis[i]
                continue
            _pivot(tab, basis, i, j)
        i += 1
    m = len(basis)
    tab = [r[:n] + [r[-1]] for r in tab[:m]]
    cost = [Fraction(v) for v in c] + [Fraction(0)]
    for i, bv in enumerate(basis):
        f = cost[bv]
        if f:
            cost = [a - f * b for a, b in zip(cost, tab[i])]
    tab.append(cost)
    status = _run(tab, basis, m, range(n))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = tab[i][-1]
    return LPResult(OPTIMAL, tuple(x), -tab[m][-1])


def maximize_free(c, a_ub, b_ub) -> LPResult:
    """Maximize ``c.x`` over free ``x`` subject to ``a_ub x <= b_ub``."""
    n = len(c)
    m = len(a_ub)
    # z = (x+, x-, slack)
    a_eq = []
    for i, (row, _) in enumerate(zip(a_ub, b_ub)):
        slack = [0] * m
        slack[i] = 1
        a_eq.append(list(row) + [-v for v in row] + slack)
    cost = [-Fraction(v) for v in c] + [Fraction(v) for v in c] + [0] * m
    res = solve_standard(cost, a_eq, b_ub)
    if res.status != OPTIMAL:
        return res
    x = tuple(res.x[k] - res.x[n + k] for k in range(n))
    return LPResult(OPTIMAL, x, -res.value)
