"""Independent oracles shared by the property and acceptance suites.

None of these helpers reuse the package's own fitting or invariant code;
they recompute from raw lengths and ideal operations.
"""

import itertools
from fractions import Fraction

from sgcm.exactalg import Ideal, ideal_intersection, ideal_sum


def staircase(d, k):
    """The exponent vector (2,...,2,1,...,1) with k leading twos."""
    return tuple([2] * k + [1] * (d - k))


def multilinear_fit(values, d):
    """Fit ``l(n) = a_0 + a_1 n_1 + a_2 n_1 n_2 + ... + a_d n_1...n_d``.

    ``values`` maps exponent tuples to lengths and must contain the staircase
    points.  Consecutive staircase points differ only in ``n_k``, which gives
    ``a_k`` by a triangular solve.  Returns ``(coefficients, exact)`` where
    ``exact`` says the fit reproduces every supplied value.
    """
    rows = [[_prefix_product(staircase(d, k), i) for i in range(d + 1)] for k in range(d + 1)]
    rhs = [Fraction(values[staircase(d, k)]) for k in range(d + 1)]
    coeffs = _solve(rows, rhs)
    exact = all(
        sum(c * _prefix_product(n, i) for i, c in enumerate(coeffs)) == v for n, v in values.items()
    )
    return coeffs, exact


def _prefix_product(n, i):
    out = 1
    for e in n[:i]:
        out *= e
    return out


def _solve(rows, rhs):
    n = len(rows)
    A = [list(map(Fraction, r)) + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c] / A[c][c]
                A[r] = [u - f * v for u, v in zip(A[r], A[c])]
    return [A[i][n] / A[i][i] for i in range(n)]


def grid(d, bound=3):
    return list(itertools.product(range(1, bound + 1), repeat=d))


def is_monotone(table):
    """``table[n] <= table[m]`` whenever ``n <= m`` componentwise."""
    keys = list(table)
    for n in keys:
        for m in keys:
            if all(a <= b for a, b in zip(n, m)) and table[n] > table[m]:
                return False
    return True


def lemma_2_5_holds(M, D, x):
    """``(I + (x)) ∩ J_i = (I + (x_1..x_{d_i})) ∩ J_i`` per component, for every D_i."""
    ring = M.ring
    xs = list(x)
    for N, d in zip(D.chain[:-1], D.dims[:-1]):
        k = max(d, 0)
        full = Ideal(ring, xs)
        part = Ideal(ring, xs[:k])
        for I, J in zip(M.components, N.ideals):
            left = ideal_intersection(ideal_sum(I, full), J)
            right = ideal_intersection(ideal_sum(I, part), J)
            if ideal_sum(left, I) != ideal_sum(right, I):
                return False
    return True
