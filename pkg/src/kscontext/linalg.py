"""Exact Gauss-Jordan elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def solve(a, b):
    """Solve ``a x = b``.

    Returns ``(x, unique)`` with one particular solution (free variables
    set to zero), or ``(None, False)`` when the system is inconsistent.
    """
    n = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    m, pivots = rref(aug)
    if n in pivots:
        return None, False
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = m[i][n]
    return x, len(pivots) == n


class IncrementalBasis:
    """Tracks linear independence of a growing list of column vectors."""

    def __init__(self):
        self._rows = []  # (pivot index, reduced vector)

    def reduce(self, v):
        v = [Fraction(x) for x in v]
        for p, row in self._rows:
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def try_add(self, v) -> bool:
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        inv = 1 / v[p]
        self._rows.append((p, [x * inv for x in v]))
        return True

    def copy(self):
        other = IncrementalBasis()
        other._rows = list(self._rows)
        return other

    def __len__(self):
        return len(self._rows)


MERSENNE61 = (1 << 61) - 1


class ModPBasis:
    """IncrementalBasis over GF(p) for integer vectors.

    Exact for 0/1 vectors of length n when the Hadamard bound on n x n
    minors, (n+1)^((n+1)/2) / 2^n, stays below p: then a minor vanishes
    mod p only if it vanishes over the rationals.
    """

    def __init__(self, p: int = MERSENNE61):
        self.p = p
        self._rows = []

    @staticmethod
    def exact_for(n: int, p: int = MERSENNE61) -> bool:
        return (n + 1) ** (n + 1) < (p * 2 ** n) ** 2

    def reduce(self, v):
        p = self.p
        v = [x % p for x in v]
        for piv, row in self._rows:
            f = v[piv]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return v

    def try_add(self, v) -> bool:
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = pow(v[piv], -1, self.p)
        self._rows.append((piv, [x * inv % self.p for x in v]))
        return True

    def copy(self):
        other = ModPBasis(self.p)
        other._rows = list(self._rows)
        return other

    def __len__(self):
        return len(self._rows)


def solve_integer(a, b):
    """``solve`` for integer matrices, eliminating with Python ints and
    dividing once per unknown at the end."""
    from math import gcd

    m = [list(row) + [bv] for row, bv in zip(a, b)]
    n = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f, g = m[i][c], pr[c]
                row = [g * x - f * y for x, y in zip(m[i], pr)]
                k = 0
                for x in row:
                    k = gcd(k, x)
                m[i] = [x // k for x in row] if k > 1 else row
        pivots.append(c)
        r += 1
    if any(row[n] for row in m[r:]):
        return None, False
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = Fraction(m[i][n], m[i][c])
    return x, len(pivots) == n
