"""Systems of parameters, d- and dd-sequences, multiplicities and I_{F,M}.

Every length here is a vector-space dimension of a graded quotient, so the
elements of a parameter system are expected to be homogeneous of positive
degree.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg import (
    INFINITE,
    Ideal,
    Polynomial,
    contains_power_of_irrelevant,
    hilbert_function_values,
    ideal_colon,
    ideal_intersection,
    ideal_sum,
    vector_space_length,
)
from .modules import Filtration, QuotientModule, Submodule, intersect_all


class NotParametersError(ValueError):
    """Raised when a sequence fails to be a system of parameters."""


class MultiplicityNotStabilized(ArithmeticError):
    """The mixed difference changed between the base point and its shift."""


@dataclass(frozen=True)
class ParameterSystem:
    """``x = (x_1, ..., x_d)`` with an optional exponent vector ``n``."""

    elements: Tuple[Polynomial, ...]
    exponents: Optional[Tuple[int, ...]] = None
    name: str = "x"

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for f in self.elements:
            if f.is_zero() or f.degree() < 1:
                raise ValueError(f"parameter element {f} must have positive degree")
        if self.exponents is not None:
            exps = tuple(int(e) for e in self.exponents)
            if len(exps) != len(self.elements) or any(e < 1 for e in exps):
                raise ValueError("exponents must be positive, one per element")
            object.__setattr__(self, "exponents", exps)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def ring(self):
        return self.elements[0].ring

    def powered(self, n: Optional[Sequence[int]] = None) -> List[Polynomial]:
        """``x(n) = (x_1^{n_1}, ..., x_d^{n_d})`` (defaults to the stored exponents)."""
        if n is None:
            n = self.exponents or (1,) * len(self)
        if len(n) != len(self):
            raise ValueError("exponent vector has the wrong length")
        return [f ** e for f, e in zip(self.elements, n)]

    def power(self, n: Sequence[int]) -> "ParameterSystem":
        return ParameterSystem(tuple(self.powered(n)), name=self.name)

    def prefix(self, s: int) -> "ParameterSystem":
        return ParameterSystem(self.elements[:s], name=self.name)

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.elements) + ")"


def _ideal_of(ring, polys) -> Ideal:
    return Ideal(ring, list(polys))


def quotient_length(M: QuotientModule, x: ParameterSystem, n: Optional[Sequence[int]] = None) -> int:
    """``ℓ(M/x(n)M) = Σ_k dim R/(I_k + x(n))``."""
    xn = x.powered(n)
    total = 0
    for I in M.components:
        v = vector_space_length(ideal_sum(I, _ideal_of(M.ring, xn)))
        if v is INFINITE:
            raise NotParametersError("not a system of parameters: the quotient has infinite length")
        total += v
    return total


def is_sop(M: QuotientModule, x: ParameterSystem) -> bool:
    if len(x) != M.dim:
        return False
    try:
        quotient_length(M, x)
    except NotParametersError:
        return False
    return True


def _effective_dims(F: Filtration) -> List[int]:
    return [max(d, 0) for d in F.dims]


def is_good_sop(M: QuotientModule, F: Filtration, x: ParameterSystem) -> bool:
    """``M_i ∩ (x_{d_i+1}, ..., x_d)M = 0`` for every ``i < t``."""
    d = len(x)
    dims = _effective_dims(F)
    for i in range(F.t):
        tail = list(x.elements[dims[i]:d])
        if not tail or F.chain[i].is_zero():
            continue
        T = _ideal_of(M.ring, tail)
        for I, J in zip(M.components, F.chain[i].ideals):
            if I.contains_ideal(J):
                continue
            inter = ideal_intersection(J, ideal_sum(I, T))
            if not I.contains_ideal(inter):
                return False
    return True


class _ColonCache:
    """Memoizes ``Q : g``.  A product is handled one factor at a time, which
    keeps linear factors on the fast coordinate-change route."""

    def __init__(self):
        self.store: Dict[tuple, Ideal] = {}

    def colon(self, Q: Ideal, factors: Sequence[Polynomial]) -> Ideal:
        for g in factors:
            key = (Q.generators, g)
            hit = self.store.get(key)
            if hit is None:
                hit = self.store[key] = ideal_colon(Q, Ideal(Q.ring, [g]))
            Q = hit
        return Q


def _product(factors: Sequence[Polynomial]) -> Polynomial:
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out


def _d_sequence_on(I: Ideal, seq: Sequence[Tuple[Polynomial, ...]], cache: _ColonCache) -> bool:
    """d-sequence test; each entry of ``seq`` is given as a tuple of factors."""
    ring = I.ring
    elems = [_product(f) for f in seq]
    for i in range(len(seq)):
        Q = ideal_sum(I, _ideal_of(ring, elems[:i]))
        for j in range(i, len(seq)):
            rhs = cache.colon(Q, seq[j])
            lhs = cache.colon(rhs, seq[i])
            if lhs != rhs:
                return False
    return True


def is_d_sequence(M: QuotientModule, x: Sequence[Polynomial]) -> bool:
    """``(x_1..x_{i-1})M : x_i x_j = (x_1..x_{i-1})M : x_j`` for all ``i ≤ j``."""
    seq = [(f,) for f in x]
    cache = _ColonCache()
    return all(_d_sequence_on(I, seq, cache) for I in M.components)


def is_dd_sequence(M: QuotientModule, x: Sequence[Polynomial], bound: int = 2) -> bool:
    """dd-sequence test with all exponents restricted to ``1..bound``."""
    seq = list(x)
    s = len(seq)
    cache = _ColonCache()
    powers = {(j, e): seq[j] ** e for j in range(s) for e in range(1, bound + 1)}
    for n in itertools.product(range(1, bound + 1), repeat=s):
        factors = [(seq[j],) * n[j] for j in range(s)]
        suffix = [powers[(j, n[j])] for j in range(s)]
        for i in range(1, s + 1):
            tail = _ideal_of(M.ring, suffix[i:])
            for I in M.components:
                if not _d_sequence_on(ideal_sum(I, tail), factors[:i], cache):
                    return False
    return True


# -- multiplicities ------------------------------------------------------------


def _component_length(I: Ideal, J: Ideal, xn: Sequence[Polynomial], ann: Ideal):
    """``ℓ(J/(x(n)J + I))``; ``ann = I : J`` certifies finiteness cheaply."""
    ring = I.ring
    if J.is_unit():
        return vector_space_length(ideal_sum(I, _ideal_of(ring, xn)))
    K = ideal_sum(I, _ideal_of(ring, [f * g for f in xn for g in J.generators]))
    ok, N = contains_power_of_irrelevant(ideal_sum(ann, _ideal_of(ring, xn)))
    if not ok:
        return INFINITE
    top = N + J.max_generator_degree()
    a = hilbert_function_values(K, top)
    b = hilbert_function_values(J, top)
    a += [0] * (top + 1 - len(a))
    b += [0] * (top + 1 - len(b))
    return sum(u - v for u, v in zip(a, b))


def submodule_quotient_length(M: QuotientModule, N: Submodule, x: Sequence[Polynomial]):
    """``ℓ(N/xN)`` for a split submodule ``N``."""
    total = 0
    for I, J, A in zip(M.components, N.ideals, N.annihilators()):
        if A.is_unit():
            continue
        v = _component_length(I, J, list(x), A)
        if v is INFINITE:
            return INFINITE
        total += v
    return total


def _mixed_difference(M, N, x: ParameterSystem, base: Sequence[int]) -> int:
    s = len(base)
    total = 0
    for eps in itertools.product((0, 1), repeat=s):
        n = [b + e for b, e in zip(base, eps)]
        v = submodule_quotient_length(M, N, x.prefix(s).powered(n))
        if v is INFINITE:
            raise NotParametersError("prefix is not a system of parameters of the submodule")
        total += (-1) ** (s - sum(eps)) * v
    return total


def multiplicity(M: QuotientModule, N: Submodule, x: ParameterSystem, s: Optional[int] = None, base: int = 2) -> int:
    """``e(x_1, ..., x_s; N)`` by a mixed finite difference at ``(base, ..., base)``.

    ``s`` defaults to ``dim N``.  When ``s ≤ 0`` the value is ``ℓ(N)``.  The
    difference is recomputed at ``base + 1`` and must agree.
    """
    from .modules import submodule_dimension, subquotient_length

    if s is None:
        s = submodule_dimension(M, N)
    if s <= 0:
        v = subquotient_length(M, M.zero(), N)
        if v is INFINITE:
            raise NotParametersError("zero-dimensional submodule expected")
        return v
    e1 = _mixed_difference(M, N, x, [base] * s)
    e2 = _mixed_difference(M, N, x, [base + 1] * s)
    if e1 != e2:
        raise MultiplicityNotStabilized("multiplicity not stabilized, increase base point")
    return e1


@dataclass
class MultiplicityTable:
    """``e(x_1..x_{d_i}; M_i)`` for every member of a filtration."""

    dims: Tuple[int, ...]
    values: Dict[int, int] = field(default_factory=dict)

    def __getitem__(self, i):
        return self.values[i]

    def weighted_sum(self, n: Sequence[int]) -> int:
        return sum(prod(n[: max(d, 0)]) * self.values[i] for i, d in enumerate(self.dims))

    def as_list(self) -> List[int]:
        return [self.values[i] for i in range(len(self.dims))]


def multiplicity_table(M: QuotientModule, F: Filtration, x: ParameterSystem) -> MultiplicityTable:
    table = MultiplicityTable(tuple(F.dims))
    for i, (N, d) in enumerate(zip(F.chain, F.dims)):
        table.values[i] = 0 if d < 0 else multiplicity(M, N, x, d)
    return table


def I_F_M(
    M: QuotientModule,
    F: Filtration,
    x: ParameterSystem,
    n: Optional[Sequence[int]] = None,
    table: Optional[MultiplicityTable] = None,
) -> int:
    """``ℓ(M/x(n)M) - Σ_i n_1...n_{d_i} e(x_1..x_{d_i}; M_i)``."""
    n = tuple(n) if n is not None else (1,) * len(x)
    if table is None:
        table = multiplicity_table(M, F, x)
    return quotient_length(M, x, n) - table.weighted_sum(n)


def I_F_M_grid(M, F, x, bound: int = 3, table: Optional[MultiplicityTable] = None) -> Dict[Tuple[int, ...], int]:
    if table is None:
        table = multiplicity_table(M, F, x)
    return {
        n: I_F_M(M, F, x, n, table)
        for n in itertools.product(range(1, bound + 1), repeat=len(x))
    }


# -- search --------------------------------------------------------------------


COEFFICIENTS = (-2, -1, 0, 1, 2)


@dataclass
class SearchResult:
    """Outcome of :func:`find_good_sop`."""

    sop: Optional[ParameterSystem]
    tries: int
    seed: int
    message: str = ""

    @property
    def found(self) -> bool:
        return self.sop is not None


def _monomials_of_degree(ring, k: int) -> List[Polynomial]:
    return [
        ring.monomial(tuple(sum(1 for v in combo if v == i) for i in range(ring.nvars)))
        for combo in itertools.combinations_with_replacement(range(ring.nvars), k)
    ]


def forms_of_degree(A: Ideal, degree: Optional[int] = None) -> List[Polynomial]:
    """Spanning forms of one graded piece of a homogeneous ideal.

    With ``degree=None`` this is the lowest-degree part (its GB elements).
    With ``degree`` given, the piece ``A_degree`` is spanned by the products
    ``m * g`` of GB elements ``g`` with monomials ``m`` of complementary
    degree (the list is empty below the initial degree).
    """
    ring = A.ring
    if A.is_unit():
        return ring.gens() if degree in (None, 1) else _monomials_of_degree(ring, degree)
    elems = [g for g in A.gb().elements if g.is_homogeneous()]
    if not elems:
        return []
    if degree is None:
        low = min(int(g.degree()) for g in elems)
        return [g for g in elems if g.degree() == low]
    out, seen = [], set()
    for g in elems:
        k = degree - int(g.degree())
        if k < 0:
            continue
        for m in _monomials_of_degree(ring, k):
            h = m * g
            key = frozenset(h.terms.items())
            if key not in seen:
                seen.add(key)
                out.append(h)
    return out


def linear_forms_of(A: Ideal) -> List[Polynomial]:
    """A basis of the degree-1 part of a homogeneous ideal (from its GB)."""
    return forms_of_degree(A, 1)


def annihilator(M: QuotientModule, N: Submodule) -> Ideal:
    return intersect_all(M.ring, N.annihilators())


def _random_combination(pool: Sequence[Polynomial], rng: random.Random) -> Polynomial:
    ring = pool[0].ring
    f = ring.zero()
    while f.is_zero():
        f = ring.zero()
        for g in pool:
            f = f + g.scale(rng.choice(COEFFICIENTS))
    return f


def find_good_sop(
    M: QuotientModule,
    F: Filtration,
    seed: int = 0,
    max_tries: int = 50,
    accept=None,
    degree: Optional[int] = 1,
) -> SearchResult:
    """Randomized search for a good system of parameters with respect to ``F``.

    Position ``j`` with ``d_i < j ≤ d_{i+1}`` draws a combination of forms
    of ``Ann(M_i)`` with coefficients from :data:`COEFFICIENTS`.  By default
    only linear forms are used; ``degree=None`` falls back to the lowest
    degree present in each annihilator.  ``accept`` is an optional extra
    predicate on the candidate.  The same seed always gives the same result.
    """
    rng = random.Random(seed)
    d = M.dim
    dims = _effective_dims(F)
    pools: List[List[Polynomial]] = []
    for i in range(F.t):
        forms = forms_of_degree(annihilator(M, F.chain[i]), degree)
        for _ in range(dims[i], dims[i + 1]):
            pools.append(forms)
    if len(pools) != d:
        return SearchResult(None, 0, seed, "filtration dimensions do not reach dim M")
    if any(not pool for pool in pools):
        return SearchResult(None, 0, seed, "some annihilator has no forms of the requested degree")
    for attempt in range(1, max_tries + 1):
        x = ParameterSystem(tuple(_random_combination(pool, rng) for pool in pools))
        if is_sop(M, x) and is_good_sop(M, F, x) and (accept is None or accept(x)):
            return SearchResult(x, attempt, seed, "found")
    return SearchResult(None, max_tries, seed, f"no good system of parameters after {max_tries} tries")



def degree_plan(M: QuotientModule, F: Filtration) -> List[Optional[int]]:
    """Degrees to draw parameters from: lowest available, then 2, 3, ...

    The plan stops two above the largest generator degree of the
    annihilators ``Ann(M_i)``.
    """
    top = 1
    for N in F.chain[:-1]:
        A = annihilator(M, N)
        if not A.is_unit():
            top = max(top, max(int(g.degree()) for g in A.gb().elements))
    return [None] + list(range(2, top + 3))


def iter_good_sops(M: QuotientModule, F: Filtration, seed: int = 0, budget: int = 20, tries: int = 3):
    """Yield ``(seed, sop)`` pairs from seeds ``seed .. seed+budget-1``.

    For every seed the degrees of :func:`degree_plan` are tried in order
    and the first good sop found is yielded.
    """
    plan = degree_plan(M, F)
    for s in range(seed, seed + budget):
        for degree in plan:
            res = find_good_sop(M, F, seed=s, max_tries=tries, degree=degree)
            if res.found:
                yield s, res.sop
                break


__all__ = [
    "COEFFICIENTS",
    "I_F_M",
    "I_F_M_grid",
    "MultiplicityNotStabilized",
    "MultiplicityTable",
    "NotParametersError",
    "ParameterSystem",
    "SearchResult",
    "annihilator",
    "find_good_sop",
    "degree_plan",
    "forms_of_degree",
    "iter_good_sops",
    "is_d_sequence",
    "is_dd_sequence",
    "is_good_sop",
    "is_sop",
    "linear_forms_of",
    "multiplicity",
    "multiplicity_table",
    "quotient_length",
    "submodule_quotient_length",
]
