"""Small exact matrices over Q (lists of lists of Fraction or int)."""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]


def as_fractions(M) -> Matrix:
    return [[Fraction(v) for v in row] for row in M]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(M) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A, B) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matsub(A, B) -> Matrix:
    return [[Fraction(a) - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matpow(M, e: int) -> Matrix:
    result = identity(len(M))
    for _ in range(e):
        result = matmul(result, M)
    return result


def _echelon(M) -> tuple[Matrix, list[int]]:
    A = as_fractions(M)
    rows = len(A)
    cols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M) -> int:
    return len(_echelon(M)[1]) if M else 0


def det(M) -> Fraction:
    A = as_fractions(M)
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return d


def solve(M, v) -> list[Fraction]:
    """Unique solution of M x = v; raises if M is singular."""
    n = len(M)
    aug = [list(row) + [v[i]] for i, row in enumerate(as_fractions(M))]
    E, pivots = _echelon(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [E[i][n] for i in range(n)]


def inverse(M) -> Matrix:
    n = len(M)
    cols = [solve(M, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return transpose(cols)
