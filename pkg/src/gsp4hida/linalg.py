"""Small exact matrix helpers over int / Fraction / Z/N.

Matrices are tuples of row tuples.  Nothing here is specific to GSp4.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

Matrix = tuple


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(n: int = 4) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(n: int = 4) -> list:
    return [[0] * n for _ in range(n)]


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix, modulus: int | None = None) -> Matrix:
    n, m, k = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = 0
            for t in range(k):
                if ai[t]:
                    s += ai[t] * b[t][j]
            row.append(s % modulus if modulus else s)
        out.append(tuple(row))
    return tuple(out)


def matprod(*ms: Matrix, modulus: int | None = None) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = matmul(out, m, modulus)
    return out


def scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def reduce(a: Matrix, modulus: int) -> Matrix:
    return tuple(tuple(x % modulus for x in row) for row in a)


def to_fractions(a: Matrix) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in a)


def det(a: Matrix):
    """Exact determinant by cofactor expansion (n <= 4 here)."""
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = 0
    for j in range(n):
        if a[0][j]:
            minor = tuple(tuple(row[k] for k in range(n) if k != j) for row in a[1:])
            total += (-1) ** j * a[0][j] * det(minor)
    return total


def inverse(a: Matrix, inv: Callable = lambda x: 1 / Fraction(x), modulus: int | None = None) -> Matrix:
    """Gauss-Jordan inverse; ``inv`` inverts a scalar pivot.

    Over Z/N the pivot is chosen to be a unit when one exists in the
    column, which is always the case for matrices invertible mod N.
    """
    n = len(a)
    m = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = None
        for r in range(c, n):
            x = m[r][c]
            if modulus is None:
                if x != 0:
                    piv = r
                    break
            else:
                try:
                    inv(x)
                    piv = r
                    break
                except (ValueError, ZeroDivisionError):
                    continue
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        iv = inv(m[c][c])
        m[c] = [x * iv for x in m[c]]
        if modulus:
            m[c] = [x % modulus for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
                if modulus:
                    m[r] = [x % modulus for x in m[r]]
    return tuple(tuple(row[n:]) for row in m)


def is_diagonal(a: Matrix) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(len(a)) if i != j)


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        iv = pow(m[rank][c], -1, p)
        m[rank] = [x * iv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank
