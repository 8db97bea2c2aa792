"""Exact Gaussian elimination over the coefficient fields."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(matrix: Sequence[Sequence], one=Fraction(1)):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    M = [list(r) for r in matrix]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(matrix: Sequence[Sequence], one=Fraction(1)) -> int:
    return len(rref(matrix, one)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None, one=Fraction(1)) -> list[list]:
    """Basis of {v : M v = 0}."""
    if not matrix:
        n = ncols or 0
        return [[one if i == j else one * 0 for i in range(n)] for j in range(n)]
    R, pivots = rref(matrix, one)
    n = len(matrix[0])
    zero = one * 0
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve_affine(A: Sequence[Sequence], b: Sequence, one=Fraction(1)):
    """Particular solution and nullspace basis of A x = b, or None if inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, pivots = rref(aug, one)
    if n in pivots:
        return None
    zero = one * 0
    x = [zero] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x, nullspace(A, n, one)


def determinant(matrix: Sequence[Sequence], one=Fraction(1)):
    M = [list(r) for r in matrix]
    n = len(M)
    det = one
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return one * 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det = det * M[c][c]
        inv = one / M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return det
