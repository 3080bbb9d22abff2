"""Hilbert-Samuel functions of parameter ideals and their coefficient formulas.

For a parameter ideal ``q = (x_1, ..., x_d)`` generated by a dd-sequence
the function ``n ↦ ℓ(M/q^{n+1}M)`` is a polynomial in the binomial basis
already from ``n = 0``; its coefficients are expressed through
multiplicities along a gCM filtration and local cohomology lengths.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .exactalg import INFINITE, Ideal, ideal_sum, vector_space_length
from .exactalg.linalg import solve_exact
from .modules import Filtration, QuotientModule, h0_length
from .parameters import ParameterSystem, multiplicity, multiplicity_table
from .seqcm import UNAVAILABLE, CohomologyUnavailable, binom, module_cohomology_length


def power_generators(x: Sequence, k: int) -> list:
    """All products of ``k`` elements of ``x`` (generators of ``q^k``)."""
    out = []
    for combo in itertools.combinations_with_replacement(range(len(x)), k):
        p = x[combo[0]]
        for idx in combo[1:]:
            p = p * x[idx]
        out.append(p)
    return out


def hs_function(M: QuotientModule, x: ParameterSystem, n: int) -> int:
    """``ℓ(M/q^{n+1}M)`` for ``q = (x_1, ..., x_d)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    gens = power_generators(list(x), n + 1)
    total = 0
    for I in M.components:
        v = vector_space_length(ideal_sum(I, Ideal(M.ring, gens)))
        if v is INFINITE:
            raise ValueError("ℓ(M/q^{n+1}M) is infinite: x is not a system of parameters")
        total += v
    return total


@dataclass
class HilbertSamuelRecord:
    """Fitted coefficients ``e_0, ..., e_d`` and the values they were checked on."""

    q_generators: ParameterSystem
    values: Dict[int, int]
    coefficients: List[int]
    fit_exact: bool
    failed_at: Optional[int] = None

    @property
    def d(self) -> int:
        return len(self.coefficients) - 1

    def predict(self, n: int) -> int:
        d = self.d
        return sum(binom(n + i, i) * self.coefficients[d - i] for i in range(d + 1))


def hs_coefficients(M: QuotientModule, x: ParameterSystem, check_upto: Optional[int] = None) -> HilbertSamuelRecord:
    """Solve for ``e_0..e_d`` from ``n = 0..d`` and check ``n = d+1..check_upto``.

    ``check_upto`` defaults to ``d + 3``.  A non-integral solution or any
    mismatch sets ``fit_exact`` to False.
    """
    d = len(x)
    top = d + 3 if check_upto is None else check_upto
    values = {n: hs_function(M, x, n) for n in range(max(top, d) + 1)}
    # unknown vector (e_d, e_{d-1}, ..., e_0): column i carries e_{d-i}
    A = [[binom(n + i, i) for i in range(d + 1)] for n in range(d + 1)]
    sol = solve_exact(A, [values[n] for n in range(d + 1)])
    integral = all(Fraction(v).denominator == 1 for v in sol)
    coeffs = [int(sol[d - k]) if integral else 0 for k in range(d + 1)]
    rec = HilbertSamuelRecord(x, values, coeffs, integral, None if integral else 0)
    if integral:
        for n in range(d + 1, top + 1):
            if rec.predict(n) != values[n]:
                rec.fit_exact = False
                rec.failed_at = n
                break
    return rec


@dataclass
class IdentityCheck:
    name: str
    lhs: object
    rhs: object

    @property
    def passed(self) -> Optional[bool]:
        if self.lhs == UNAVAILABLE or self.rhs == UNAVAILABLE:
            return None
        return self.lhs == self.rhs


@dataclass
class HSVerification:
    record: HilbertSamuelRecord
    checks: List[IdentityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.record.fit_exact and all(c.passed for c in self.checks)


def _cohomology_or_unavailable(ideals, j):
    try:
        v = module_cohomology_length(ideals, j)
    except CohomologyUnavailable:
        return UNAVAILABLE
    return v


def _weighted(terms):
    """``Σ c·v`` where any unavailable or infinite term poisons the sum."""
    total = 0
    for c, v in terms:
        if v == UNAVAILABLE:
            return UNAVAILABLE
        if v is INFINITE:
            return INFINITE if c else total
        total += c * v
    return total


def verify_hs_theorem(M: QuotientModule, F: Filtration, x: ParameterSystem, record: Optional[HilbertSamuelRecord] = None) -> HSVerification:
    """Check the coefficient identities against a fitted Hilbert-Samuel record.

    * ``e_{d-d_k} = e(x_1..x_{d_k}; M_k) + Σ_{j=1}^{d_k} C(d_k-1, j-1) ℓ(H^j(M/M_k))``
      for every ``k`` with ``d_k ≥ 1``;
    * ``e_{d-i} = Σ_{j=1}^{i} C(i-1, j-1) ℓ(H^j(M/M_k))`` for ``d_k < i < d_{k+1}``,
      ``i ≥ 1``;
    * ``e_d = ℓ(H^0(M))``.
    """
    if record is None:
        record = hs_coefficients(M, x)
    e = record.coefficients
    d = len(x)
    table = multiplicity_table(M, F, x)
    out = HSVerification(record)
    dims = F.dims
    for k in range(F.t + 1):
        dk = dims[k]
        ideals = F.chain[k].ideals
        if dk >= 1:
            rhs = _weighted(
                [(1, table[k])]
                + [(binom(dk - 1, j - 1), _cohomology_or_unavailable(ideals, j)) for j in range(1, dk + 1)]
            )
            out.checks.append(IdentityCheck(f"e_{d - dk} (k={k})", e[d - dk], rhs))
        if k < F.t:
            for i in range(max(dk, 0) + 1, dims[k + 1]):
                rhs = _weighted(
                    [(binom(i - 1, j - 1), _cohomology_or_unavailable(ideals, j)) for j in range(1, i + 1)]
                )
                out.checks.append(IdentityCheck(f"e_{d - i} (k={k}, i={i})", e[d - i], rhs))
    out.checks.append(IdentityCheck(f"e_{d} = l(H^0(M))", e[d], h0_length(M)))
    return out


def I_n_values(M: QuotientModule, F: Filtration, x: ParameterSystem, upto: int = 3) -> List[int]:
    """``I_n(M) = ℓ(M/q^{n+1}M) - Σ_{k: d_k ≥ 1} C(n+d_k, d_k) e(x_1..x_{d_k}; M_k)``."""
    table = multiplicity_table(M, F, x)
    out = []
    for n in range(upto + 1):
        corr = sum(binom(n + dk, dk) * table[k] for k, dk in enumerate(F.dims) if dk >= 1)
        out.append(hs_function(M, x, n) - corr)
    return out


@dataclass
class InvarianceReport:
    first: List[int]
    second: List[int]

    @property
    def equal(self) -> bool:
        return self.first == self.second


def I_n_invariance(M: QuotientModule, F: Filtration, x: ParameterSystem, G: Filtration, y: ParameterSystem, upto: int = 3) -> InvarianceReport:
    """Compare ``I_n(M)`` computed from two dd witnesses ``(F, x)`` and ``(G, y)``."""
    return InvarianceReport(I_n_values(M, F, x, upto), I_n_values(M, G, y, upto))


def e0_cross_check(M: QuotientModule, x: ParameterSystem, record: HilbertSamuelRecord) -> bool:
    """``e_0`` from the fit against the mixed-difference multiplicity ``e(x; M)``."""
    return record.coefficients[0] == multiplicity(M, M.whole(), x)


__all__ = [
    "HSVerification",
    "HilbertSamuelRecord",
    "IdentityCheck",
    "InvarianceReport",
    "I_n_invariance",
    "I_n_values",
    "e0_cross_check",
    "hs_coefficients",
    "hs_function",
    "power_generators",
    "verify_hs_theorem",
]
