"""Fraction-free integer linear algebra used by the hull kernel.

Everything here works on lists of Python ints; callers clear denominators
first. Nothing ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd


def det(rows: list[list[int]]) -> int:
    """Integer determinant by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            a = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - row_k[j] * a) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def _cofactor_source(d: int) -> str:
    # Straight-line Laplace expansion: minors over rows 0..k are built from
    # those over rows 0..k-1, sharing work across all d maximal minors.
    lines = ["def f(w):"]
    for k in range(d - 1):
        lines.append(f"    r{k} = w[{k}]")
    names = {(): "1"}
    for k in range(d - 1):
        grown = {}
        for cols in combinations(range(d), k + 1):
            terms = []
            for pos, c in enumerate(cols):
                rest = cols[:pos] + cols[pos + 1:]
                sign = "+" if (k + pos) % 2 == 0 else "-"
                terms.append(f"{sign} r{k}[{c}] * {names[rest]}")
            name = "m" + "_".join(map(str, cols))
            lines.append(f"    {name} = " + " ".join(terms))
            grown[cols] = name
        names = grown
    out = []
    for j in range(d):
        minor = names[tuple(c for c in range(d) if c != j)]
        out.append(minor if j % 2 == 0 else f"-{minor}")
    lines.append("    return [" + ", ".join(out) + "]")
    return "\n".join(lines)


@lru_cache(maxsize=None)
def _cofactor_fn(d: int):
    scope: dict = {}
    exec(_cofactor_source(d), scope)
    return scope["f"]


def normal_vector(vectors: list[list[int]]) -> list[int]:
    """Generalized cross product of d-1 integer vectors in Z^d.

    The result is orthogonal to every input vector and is zero exactly when
    the inputs are linearly dependent. It is not gcd-reduced. Component j is
    the signed minor with column j removed, so ``normal . x`` equals the
    determinant with ``x`` prepended as the first row.
    """
    d = len(vectors) + 1
    if d == 2:
        (x, y), = vectors
        return [y, -x]
    if d == 3:
        (a, b, c), (e, f, g) = vectors
        return [b * g - c * f, c * e - a * g, a * f - b * e]
    return _cofactor_fn(d)(vectors)


def primitive(vec: list[int]) -> list[int]:
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g > 1:
        return [v // g for v in vec]
    return list(vec)


def rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix (fraction-free row reduction)."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            if a:
                m[i] = [x * p - y * a for x, y in zip(m[i], m[r])]
                m[i] = primitive(m[i])
        r += 1
        if r == len(m):
            break
    return r


def solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular system exactly by Gauss-Jordan elimination."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n] for row in a]
