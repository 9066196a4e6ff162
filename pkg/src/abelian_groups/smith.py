"""
Smith normal form over the integers.

U * M * V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal. The
pivot is always the entry of smallest absolute value in the remaining block
(first in row-major order), so the transforms are deterministic.
"""

from typing import List, Sequence, Tuple

from sympy import Matrix

Rows = List[List[int]]


def _identity(n: int) -> Rows:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _swap_rows(A: Rows, i: int, j: int) -> None:
    A[i], A[j] = A[j], A[i]


def _swap_cols(A: Rows, i: int, j: int) -> None:
    for row in A:
        row[i], row[j] = row[j], row[i]


def _add_row(A: Rows, target: int, source: int, factor: int) -> None:
    A[target] = [x + factor * y for x, y in zip(A[target], A[source])]


def _add_col(A: Rows, target: int, source: int, factor: int) -> None:
    for row in A:
        row[target] += factor * row[source]


def _smallest(A: Rows, s: int) -> Tuple[int, int]:
    best, where = 0, (-1, -1)
    for i in range(s, len(A)):
        for j in range(s, len(A[0])):
            x = abs(A[i][j])
            if x and (best == 0 or x < best):
                best, where = x, (i, j)
    return where


def smith_rows(M: Sequence[Sequence[int]]) -> Tuple[Rows, Rows, Rows]:
    """Smith normal form on plain integer rows: returns (D, U, V)."""
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _identity(m), _identity(n)
    for s in range(min(m, n)):
        while True:
            i, j = _smallest(A, s)
            if i < 0:
                return A, U, V
            if i != s:
                _swap_rows(A, s, i)
                _swap_rows(U, s, i)
            if j != s:
                _swap_cols(A, s, j)
                _swap_cols(V, s, j)
            if A[s][s] < 0:
                A[s] = [-x for x in A[s]]
                U[s] = [-x for x in U[s]]
            pivot = A[s][s]
            for r in range(s + 1, m):
                if A[r][s]:
                    factor = -(A[r][s] // pivot)
                    _add_row(A, r, s, factor)
                    _add_row(U, r, s, factor)
            for c in range(s + 1, n):
                if A[s][c]:
                    factor = -(A[s][c] // pivot)
                    _add_col(A, c, s, factor)
                    _add_col(V, c, s, factor)
            if any(A[r][s] for r in range(s + 1, m)) or any(A[s][c] for c in range(s + 1, n)):
                continue
            offending = next(
                (r for r in range(s + 1, m) for c in range(s + 1, n) if A[r][c] % pivot),
                None,
            )
            if offending is None:
                break
            # pull the non-divisible row into the pivot row; the next pass shrinks the pivot
            _add_row(A, s, offending, 1)
            _add_row(U, s, offending, 1)
    return A, U, V


def smith_normal_form(M: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """
    Smith normal form of an integer matrix.

    Args:
        M: Row-major integer matrix

    Returns:
        (D, U, V) as sympy matrices with U * M * V = D
    """
    D, U, V = smith_rows(M)
    m = len(D)
    n = len(D[0]) if m else 0
    return Matrix(m, n, [x for row in D for x in row]), Matrix(U), Matrix(V)


def diagonal(D: Rows) -> List[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def rank_of(D: Rows) -> int:
    return sum(1 for d in diagonal(D) if d)
