"""Exact linear algebra over Q (and fraction-free elimination over integral domains)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def bareiss_det(matrix: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination.

    Entries may be ints or any integral-domain elements supporting ``*``,
    ``-``, truthiness as a zero test and exact ``//``.  Every division
    performed is exact.
    """
    m = [list(row) for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    if any(len(row) != size for row in m):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = None
    for k in range(size - 1):
        if not m[k][k]:
            for r in range(k + 1, size):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0  # zero column below the diagonal
        pivot = m[k][k]
        for i in range(k + 1, size):
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, size):
                val = row_i[j] * pivot - row_i[k] * row_k[j]
                row_i[j] = val if prev is None else val // prev
            row_i[k] = row_i[k] * 0
        prev = pivot
    det = m[size - 1][size - 1]
    return det if sign == 1 else -det


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : matrix @ v = 0}, one vector per free column."""
    if ncols is None:
        if not matrix:
            raise ValueError("column count of an empty matrix must be given")
        ncols = len(matrix[0])
    rows, pivots = rref(matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def primitive_integer_vector(v: Sequence[Fraction]) -> list[int]:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return [x // g for x in ints]


def mat_vec(matrix: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in matrix]

