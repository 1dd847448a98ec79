"""Exact integer and rational matrix helpers.

Matrices are plain lists of lists of Python ints (or ``Fraction``), so
every intermediate entry is arbitrary precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def copy(a: Sequence[Sequence]) -> list[list]:
    return [list(row) for row in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(ncols)]
        for i in range(len(a))
    ]


def matvec(a: Sequence[Sequence], x: Sequence) -> list:
    return [sum(ai * xi for ai, xi in zip(row, x)) for row in a]


def dot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def bilinear(g: Sequence[Sequence], x: Sequence, y: Sequence):
    """Return ``x^T g y``."""
    return dot(x, matvec(g, y))


def is_symmetric(a: Sequence[Sequence]) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


def det(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]]:
    """Rational inverse by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


@dataclass(frozen=True)
class SnfResult:
    """``u @ a @ v == s`` with ``u``, ``v`` unimodular and ``s`` in Smith form."""

    u: Matrix
    s: Matrix
    v: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.s[i][i] for i in range(min(len(self.s), len(self.s[0]) if self.s else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def snf(a: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form with transformation matrices.

    The pivot is always the entry of least absolute value in the trailing
    block (first in row-major order on ties), which makes the output
    deterministic and leaves matrices already in Smith form untouched.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    s = [[int(x) for x in row] for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        s[dst] = [x + k * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in s:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = s[i][j]
                    if x and (best is None or abs(x) < abs(s[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            p = s[t][t]
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
                    dirty = dirty or s[i][t] != 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
                    dirty = dirty or s[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return SnfResult(u, s, v)


def left_kernel(a: Sequence[Sequence[int]]) -> Matrix:
    """Integer basis (as rows) of ``{x : x @ a == 0}``; the result is saturated."""
    res = snf(a)
    r = res.rank
    return [list(row) for row in res.u[r:]]


def right_kernel(a: Sequence[Sequence[int]]) -> Matrix:
    """Integer basis (as columns, returned as rows) of ``{x : a @ x == 0}``."""
    res = snf(a)
    r = res.rank
    n = len(res.v)
    return [[res.v[i][j] for i in range(n)] for j in range(r, n)]
