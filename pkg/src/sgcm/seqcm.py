"""Generalized Cohen-Macaulay filtrations, sequential gCM detection and I_F(M).

Two independent routes are used throughout:

* the parametric route works with good systems of parameters and the
  lengths ``ℓ(M/x(n)M)`` (Groebner bases only);
* the cohomological route evaluates local cohomology lengths with
  Hochster's formula, available when the relevant ideals are squarefree
  monomial (``H^0`` is always computed directly).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg import INFINITE, Ideal, irrelevant_ideal, krull_dimension, saturation
from .modules import (
    Filtration,
    QuotientModule,
    Submodule,
    check_dimension_condition,
    dimension_filtration,
    h0_length,
    subquotient_length,
)
from .parameters import (
    I_F_M,
    MultiplicityTable,
    ParameterSystem,
    iter_good_sops,
    is_good_sop,
    is_sop,
    multiplicity_table,
    quotient_length,
)
from .simplicial import local_cohomology_length

UNAVAILABLE = "unavailable (non-squarefree)"


class CohomologyUnavailable(ValueError):
    """Hochster's formula does not apply to this ideal."""


class NoWitnessFound(RuntimeError):
    """The budgeted search did not produce a witness system of parameters."""


class NotGcmFiltration(ValueError):
    """A formula that needs a gCM filtration was given another one."""


# -- binomial convention -------------------------------------------------------


class BinomialConvention:
    """``C(a, b)`` is the usual binomial coefficient for ``0 ≤ b ≤ a`` and 0 otherwise."""

    @staticmethod
    def binom(a: int, b: int) -> int:
        if b < 0 or a < 0 or b > a:
            return 0
        return comb(a, b)


binom = BinomialConvention.binom


def c_coefficient(d_i: int, d_next: int, j: int) -> int:
    """``c_ij = Σ_{k=d_i}^{d_{i+1}-1} C(k-1, j-1)`` with ``d_i`` clamped at 0."""
    return sum(binom(k - 1, j - 1) for k in range(max(d_i, 0), d_next))


# -- local cohomology of direct sums ---------------------------------------------


def _hochster_ideal(J: Ideal) -> Ideal:
    """An ideal whose quotient has the same ``H^j``, ``j ≥ 1``, and is squarefree.

    ``R/J`` and ``R/J^sat`` share all ``H^j`` with ``j ≥ 1``, so a
    non-squarefree monomial ideal still qualifies when its saturation is
    squarefree.
    """
    if J.is_squarefree_monomial():
        return J
    if J.is_monomial():
        S = saturation(J, irrelevant_ideal(J.ring))
        if S.is_squarefree_monomial():
            return S
    raise CohomologyUnavailable("Hochster's formula needs squarefree monomial data")


def cohomology_available(ideals: Sequence[Ideal]) -> bool:
    try:
        for J in ideals:
            if not J.is_unit():
                _hochster_ideal(J)
    except CohomologyUnavailable:
        return False
    return True


def module_cohomology_length(ideals: Sequence[Ideal], j: int):
    """``ℓ(H^j_m((+)_k R/J_k))`` (unit components are zero summands)."""
    total = 0
    for J in ideals:
        if J.is_unit():
            continue
        if j == 0:
            v = h0_length(QuotientModule.cyclic(J))
        else:
            v = local_cohomology_length(_hochster_ideal(J), j)
        if v is INFINITE:
            return INFINITE
        total += v
    return total


def buchsbaum_invariant(ideals: Sequence[Ideal]) -> Optional[int]:
    """``I(N) = Σ_j C(d-1, j) ℓ(H^j(N))`` for ``N = (+) R/J_k``; ``None`` if not gCM."""
    comps = [J for J in ideals if not J.is_unit()]
    if not comps:
        return 0
    d = max(krull_dimension(J) for J in comps)
    total = 0
    for j in range(max(d, 0)):
        v = module_cohomology_length(comps, j)
        if v is INFINITE:
            return None
        total += binom(d - 1, j) * v
    return total


# -- gCM filtrations -----------------------------------------------------------


@dataclass
class FiltrationVerdict:
    """Tri-state answer: ``is_gcm`` is ``None`` when no route could decide."""

    is_gcm: Optional[bool]
    route: str
    reason: str = ""
    lengths: Dict[str, object] = field(default_factory=dict)

    def __bool__(self):
        return bool(self.is_gcm)


def _normalized(F: Filtration) -> Filtration:
    """Drop ``M_0`` when ``dim M_1 ≤ 0`` so that ``dim M_1 > 0`` holds."""
    if F.t >= 1 and F.dims[1] <= 0:
        return Filtration(F.module, F.chain[1:], F.dims[1:])
    return F


def cohomological_filtration_check(M: QuotientModule, F: Filtration) -> FiltrationVerdict:
    """gCM test from local cohomology: ``ℓ(M_0) < ∞`` and ``H^i(M/M_j)`` finite
    for ``i < dim M_{j+1}``."""
    lengths: Dict[str, object] = {}
    for j in range(F.t):
        ideals = F.chain[j].ideals
        if F.dims[j + 1] > 1 and not cohomology_available(ideals):
            return FiltrationVerdict(None, "cohomological", UNAVAILABLE)
        for i in range(F.dims[j + 1]):
            v = module_cohomology_length(ideals, i)
            lengths[f"H^{i}(M/M_{j})"] = v
            if v is INFINITE:
                return FiltrationVerdict(
                    False, "cohomological", f"H^{i}(M/M_{j}) has infinite length", lengths
                )
    return FiltrationVerdict(True, "cohomological", "all required local cohomology has finite length", lengths)


def check_gcm_filtration(M: QuotientModule, F: Filtration, seed: int = 0, budget: int = 20) -> FiltrationVerdict:
    """Decide whether ``F`` is a generalized Cohen-Macaulay filtration."""
    if not check_dimension_condition(F):
        raise ValueError("filtration violates the dimension condition")
    if F.dims[0] > 0:
        return FiltrationVerdict(False, "definition", "dim M_0 > 0")
    verdict = cohomological_filtration_check(M, F)
    if verdict.is_gcm is not None:
        return verdict
    # parametric route: M must be sequentially gCM, then compare with D
    seq = is_seq_gcm(M, seed=seed, budget=budget, cohomology=False)
    if seq.is_seq_gcm is None:
        return FiltrationVerdict(None, "parametric", "undecidable by this route: " + seq.message)
    if not seq.is_seq_gcm:
        return FiltrationVerdict(False, "parametric", "M is not sequentially gCM")
    D = _normalized(seq.witness_filtration)
    G = _normalized(F)
    if G.t != D.t:
        return FiltrationVerdict(False, "parametric", "length differs from the dimension filtration")
    lengths = {}
    for i in range(G.t):
        if not G.chain[i] <= D.chain[i]:
            return FiltrationVerdict(False, "parametric", f"M_{i} is not inside D_{i}")
        v = subquotient_length(M, G.chain[i], D.chain[i])
        lengths[f"D_{i}/M_{i}"] = v
        if v is INFINITE:
            return FiltrationVerdict(False, "parametric", f"D_{i}/M_{i} has infinite length", lengths)
    return FiltrationVerdict(True, "parametric", "D_i/M_i of finite length for all i", lengths)


# -- witnesses -------------------------------------------------------------------


@dataclass
class Witness:
    """A good sop ``x`` such that ``x^N`` passes the finite criterion."""

    sop: ParameterSystem
    power: int
    constant: int
    table: MultiplicityTable
    seed: Optional[int]

    @property
    def powered_sop(self) -> ParameterSystem:
        return self.sop if self.power == 1 else self.sop.power([self.power] * len(self.sop))


def finite_criterion(M, F, x: ParameterSystem, table: Optional[MultiplicityTable] = None, power: int = 1):
    """``(I_{F,M}(x^N), I_{F,M}(x^{2N}))`` for ``N = power``."""
    if table is None:
        table = multiplicity_table(M, F, x)
    d = len(x)
    return I_F_M(M, F, x, (power,) * d, table), I_F_M(M, F, x, (2 * power,) * d, table)


def witness_for(M, F, x: ParameterSystem, powers=(1, 2), seed=None) -> Optional[Witness]:
    """Try ``x`` and then its powers against the finite criterion."""
    if not (is_sop(M, x) and is_good_sop(M, F, x)):
        return None
    table = multiplicity_table(M, F, x)
    for N in powers:
        a, b = finite_criterion(M, F, x, table, N)
        if a == b:
            return Witness(x, N, a, table, seed)
    return None


def search_witness(M, F, seed: int = 0, budget: int = 20, powers=(1, 2)) -> Tuple[Optional[Witness], List[int]]:
    """Budgeted search over seeds ``seed, seed+1, ...``."""
    tried = []
    for s, x in iter_good_sops(M, F, seed, budget):
        tried.append(s)
        w = witness_for(M, F, x, powers, seed=s)
        if w is not None:
            return w, tried
    return None, tried


# -- sequentially gCM ------------------------------------------------------------


@dataclass
class SeqGcmVerdict:
    is_seq_gcm: Optional[bool]
    status: str
    witness_filtration: Optional[Filtration] = None
    witness_sop: Optional[ParameterSystem] = None
    witness_power: int = 1
    invariant_parametric: Optional[int] = None
    invariant_cohomological: object = None
    agreement: Optional[bool] = None
    seeds: Tuple[int, ...] = ()
    message: str = ""
    cohomological_verdict: Optional[FiltrationVerdict] = None


def is_seq_gcm(M: QuotientModule, seed: int = 0, budget: int = 20, cohomology: bool = True) -> SeqGcmVerdict:
    """Sequential gCM detection through the dimension filtration ``D``.

    A witness sop (finite criterion) proves the property.  A proven negative
    only comes from the cohomological route; an empty search is reported as
    undecided.
    """
    D = dimension_filtration(M)
    if M.dim <= 0:
        return SeqGcmVerdict(True, "trivial", D, None, 1, 0, 0, True, (), "dim M <= 0")
    coh = cohomological_filtration_check(M, D) if cohomology else None
    if coh is not None and coh.is_gcm is False:
        return SeqGcmVerdict(
            False, "proven", D, message="dimension filtration is not gCM: " + coh.reason,
            invariant_cohomological=None, cohomological_verdict=coh,
        )
    inv_coh: object = UNAVAILABLE
    if coh is not None and coh.is_gcm:
        inv_coh = invariant_I_F_cohomological(M, D)
    w, tried = search_witness(M, D, seed, budget)
    if w is not None:
        agree = None if inv_coh == UNAVAILABLE else (inv_coh == w.constant)
        return SeqGcmVerdict(
            True, "witness", D, w.sop, w.power, w.constant, inv_coh, agree, tuple(tried),
            "finite criterion satisfied", coh,
        )
    if coh is not None and coh.is_gcm:
        return SeqGcmVerdict(
            True, "proven", D, None, 1, None, inv_coh, None, tuple(tried),
            f"cohomological route proves it; no parametric witness found (budget {budget})", coh,
        )
    return SeqGcmVerdict(
        None, "budget exhausted", D, seeds=tuple(tried),
        message=f"no witness found (budget {budget})", invariant_cohomological=inv_coh,
        cohomological_verdict=coh,
    )


# -- invariants ------------------------------------------------------------------


def invariant_I_F(
    M: QuotientModule,
    F: Filtration,
    seed: int = 0,
    budget: int = 20,
    sop: Optional[ParameterSystem] = None,
) -> int:
    """``I_F(M)`` by the parametric route: the constant value of ``I_{F,M}``
    along a witness sop certified by the finite criterion."""
    if M.dim <= 0:
        return 0
    w = None
    if sop is not None:
        w = witness_for(M, F, sop)
    if w is None:
        w, _ = search_witness(M, F, seed, budget)
    if w is None:
        raise NoWitnessFound(f"no witness found (budget {budget})")
    return w.constant


def invariant_I_F_cohomological(M: QuotientModule, F: Filtration) -> int:
    """``ℓ(H^0(M/M_0)) + Σ_i Σ_{j≥1} c_ij ℓ(H^j(M/M_i))``."""
    total = module_cohomology_length(F.chain[0].ideals, 0)
    for i in range(F.t):
        ideals = F.chain[i].ideals
        for j in range(1, F.dims[i + 1]):
            c = c_coefficient(F.dims[i], F.dims[i + 1], j)
            v = module_cohomology_length(ideals, j)
            if v is INFINITE:
                raise NotGcmFiltration(f"H^{j}(M/M_{i}) has infinite length")
            total += c * v
    return total


@dataclass
class FiltrationComparison:
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def compare_filtrations(M: QuotientModule, F: Filtration, G: Filtration, seed: int = 0, budget: int = 20) -> FiltrationComparison:
    """``I_F(M) - I_G(M)`` against ``ℓ(H^0(M/M_0)) - ℓ(H^0(M/N_0))``."""
    lhs = invariant_I_F(M, F, seed, budget) - invariant_I_F(M, G, seed, budget)
    rhs = module_cohomology_length(F.chain[0].ideals, 0) - module_cohomology_length(G.chain[0].ideals, 0)
    return FiltrationComparison(lhs, rhs)


@dataclass
class SeqCmVerdict:
    is_seq_cm: Optional[bool]
    invariant_parametric: Optional[int]
    vanishing_cohomological: Optional[bool]
    agreement: Optional[bool]
    message: str = ""


def check_seq_cm(M: QuotientModule, seed: int = 0, budget: int = 20) -> SeqCmVerdict:
    """Sequentially CM iff ``I_D(M) = 0``; cross-checked by the vanishing of
    ``H^j(M/D_{i-1})`` for ``j < dim D_i`` when Hochster's formula applies."""
    D = dimension_filtration(M)
    vanish: Optional[bool] = None
    if all(cohomology_available(D.chain[i].ideals) for i in range(D.t)):
        vanish = True
        for i in range(1, D.t + 1):
            for j in range(D.dims[i]):
                if module_cohomology_length(D.chain[i - 1].ideals, j) != 0:
                    vanish = False
    seq = is_seq_gcm(M, seed, budget)
    param = seq.invariant_parametric
    if seq.is_seq_gcm is False:
        return SeqCmVerdict(False, None, vanish, None if vanish is None else (vanish is False), seq.message)
    if param is None:
        return SeqCmVerdict(vanish, None, vanish, None, seq.message)
    verdict = param == 0
    agree = None if vanish is None else (vanish == verdict)
    return SeqCmVerdict(verdict, param, vanish, agree, "")


@dataclass
class Prop48Record:
    """``I_F(M)`` against ``Σ_i I(M_{i+1}/M_i)``."""

    lhs: Optional[int]
    terms: List[Optional[int]]
    representable: bool
    message: str = ""

    @property
    def rhs(self) -> Optional[int]:
        if not self.representable or any(t is None for t in self.terms):
            return None
        return sum(self.terms)

    @property
    def equal(self) -> Optional[bool]:
        return None if self.rhs is None or self.lhs is None else self.lhs == self.rhs

    @property
    def bound_holds(self) -> Optional[bool]:
        return None if self.rhs is None or self.lhs is None else self.lhs <= self.rhs


def successive_quotients(M: QuotientModule, F: Filtration) -> List[Optional[QuotientModule]]:
    """``M_{i+1}/M_i`` as cyclic quotient modules when possible."""
    out = []
    for i in range(F.t):
        keep = [k for k, J in enumerate(F.chain[i].ideals) if not J.is_unit()]
        if not keep:
            out.append(None)
            continue
        Mi = QuotientModule(M.ring, tuple(F.chain[i].ideals[k] for k in keep))
        upper = tuple(F.chain[i + 1].ideals[k] for k in keep)
        out.append(Submodule(Mi, upper).as_module())
    return out


def check_prop48_equality(M: QuotientModule, F: Filtration, seed: int = 0, budget: int = 20, lhs: Optional[int] = None) -> Prop48Record:
    """Compare ``I_F(M)`` with the sum of the Buchsbaum invariants of the
    successive quotients (cyclic presentations only)."""
    if lhs is None:
        try:
            lhs = invariant_I_F_cohomological(M, F)
        except (CohomologyUnavailable, NotGcmFiltration):
            lhs = invariant_I_F(M, F, seed, budget)
    quotients = successive_quotients(M, F)
    if any(q is None for q in quotients):
        return Prop48Record(lhs, [], False, "not representable")
    terms = []
    for q in quotients:
        try:
            terms.append(buchsbaum_invariant(q.components))
        except CohomologyUnavailable:
            return Prop48Record(lhs, terms, False, UNAVAILABLE)
    return Prop48Record(lhs, terms, True, "")


def two_step_values(M: QuotientModule, F: Filtration) -> Dict[str, Optional[int]]:
    """For ``F: M_0 ⊂ M`` report ``ℓ(M_0) + I(M/M_0)`` next to the cohomological
    ``I_F(M)``; the two can differ and both are shown."""
    if F.t != 1:
        raise ValueError("two_step_values needs a filtration M_0 ⊂ M")
    ell = subquotient_length(M, M.zero(), F.chain[0])
    quot = buchsbaum_invariant(F.chain[0].ideals)
    theorem = invariant_I_F_cohomological(M, F)
    return {
        "ell_M0_plus_I": None if ell is INFINITE or quot is None else ell + quot,
        "formula": theorem,
    }


def gcm_trivial_formula_agrees(d: int) -> bool:
    """The c_ij for ``0 ⊂ M`` reduce to ``C(d-1, j)`` (hockey stick)."""
    return all(c_coefficient(-1, d, j) == binom(d - 1, j) for j in range(1, d))


__all__ = [
    "BinomialConvention",
    "CohomologyUnavailable",
    "FiltrationComparison",
    "FiltrationVerdict",
    "NoWitnessFound",
    "NotGcmFiltration",
    "Prop48Record",
    "SeqCmVerdict",
    "SeqGcmVerdict",
    "UNAVAILABLE",
    "Witness",
    "binom",
    "buchsbaum_invariant",
    "c_coefficient",
    "check_gcm_filtration",
    "check_prop48_equality",
    "check_seq_cm",
    "cohomological_filtration_check",
    "cohomology_available",
    "compare_filtrations",
    "finite_criterion",
    "gcm_trivial_formula_agrees",
    "invariant_I_F",
    "invariant_I_F_cohomological",
    "is_seq_gcm",
    "module_cohomology_length",
    "search_witness",
    "successive_quotients",
    "two_step_values",
    "witness_for",
]
