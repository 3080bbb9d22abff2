"""Exact rank and linear solves over Q or F_p."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence


def _rank_bareiss(rows: List[List[int]]) -> int:
    """Fraction-free elimination on an integer matrix."""
    A = [list(r) for r in rows]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    rank = 0
    prev = 1
    for col in range(n):
        pivot = next((r for r in range(rank, m) if A[r][col]), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        p = A[rank][col]
        for r in range(rank + 1, m):
            a = A[r][col]
            A[r] = [(p * A[r][c] - a * A[rank][c]) // prev for c in range(n)]
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def _rank_mod_p(rows: List[List[int]], p: int) -> int:
    A = [[v % p for v in r] for r in rows]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if A[r][col]), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        inv = pow(A[rank][col], p - 2, p)
        A[rank] = [v * inv % p for v in A[rank]]
        for r in range(m):
            if r != rank and A[r][col]:
                a = A[r][col]
                A[r] = [(x - a * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def matrix_rank(rows: Sequence[Sequence[int]], p: Optional[int] = None) -> int:
    """Rank of an integer matrix over Q (``p is None``) or over F_p."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if p:
        return _rank_mod_p(rows, p)
    return _rank_bareiss(rows)


def solve_exact(A: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """Solve a square nonsingular system over Q by Gauss-Jordan elimination."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(A, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col]), None)
        if pivot is None:
            raise ValueError("singular system")
        M[col], M[pivot] = M[pivot], M[col]
        pv = M[col][col]
        M[col] = [v / pv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                a = M[r][col]
                M[r] = [x - a * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]
