"""Quotient modules ``M = R/I_1 (+) ... (+) R/I_m`` and their split submodules.

A submodule is described componentwise by ideals ``J_k`` with
``I_k ⊆ J_k``; it stands for ``N = (+)_k J_k/I_k``.  Filtrations are
ascending chains of such submodules ending at ``M`` itself.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg import (
    INFINITE,
    Ideal,
    PolyRing,
    contains_power_of_irrelevant,
    hilbert_function_values,
    ideal_colon,
    ideal_intersection,
    irrelevant_ideal,
    krull_dimension,
    saturation,
    vector_space_length,
)
from .exactalg.poly import Monomial, mono_divides


class ContainmentError(ValueError):
    """A submodule or filtration violates componentwise containment."""


def unit_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, [ring.one()])


@dataclass
class QuotientModule:
    """``(+)_k R/I_k``.  ``decompositions`` optionally maps a component index
    to a primary decomposition of its ideal (needed for non-monomial ideals)."""

    ring: PolyRing
    components: Tuple[Ideal, ...]
    decompositions: Dict[int, Tuple[Ideal, ...]] = field(default_factory=dict)

    def __post_init__(self):
        self.components = tuple(self.components)
        if not self.components:
            raise ValueError("a module needs at least one component")
        for k, I in enumerate(self.components):
            if I.ring.variables != self.ring.variables:
                raise ValueError(f"component {k} lives in another ring")
            if I.is_unit():
                raise ValueError(f"component {k} is the zero module (unit ideal)")
        self.decompositions = {k: tuple(v) for k, v in self.decompositions.items()}

    @classmethod
    def cyclic(cls, I: Ideal) -> "QuotientModule":
        return cls(I.ring, (I,))

    def __len__(self) -> int:
        return len(self.components)

    @functools.cached_property
    def dim(self) -> int:
        return max(krull_dimension(I) for I in self.components)

    def zero(self) -> "Submodule":
        return Submodule(self, self.components)

    def whole(self) -> "Submodule":
        return Submodule(self, tuple(unit_ideal(self.ring) for _ in self.components))

    def submodule(self, ideals: Sequence[Ideal]) -> "Submodule":
        return Submodule(self, tuple(ideals))

    def quotient(self, N: "Submodule") -> "QuotientModule":
        """``M/N``; components killed entirely by ``N`` are dropped."""
        comps = [J for J in N.ideals if not J.is_unit()]
        if not comps:
            raise ValueError("quotient is the zero module")
        return QuotientModule(self.ring, tuple(comps))

    def __eq__(self, other):
        if not isinstance(other, QuotientModule):
            return NotImplemented
        return self.ring == other.ring and self.components == other.components


@dataclass(eq=False)
class Submodule:
    """``(+)_k J_k/I_k`` inside a :class:`QuotientModule`."""

    module: QuotientModule
    ideals: Tuple[Ideal, ...]

    def __post_init__(self):
        self.ideals = tuple(self.ideals)
        if len(self.ideals) != len(self.module.components):
            raise ContainmentError("one ideal per component is required")
        for k, (I, J) in enumerate(zip(self.module.components, self.ideals)):
            if not J.contains_ideal(I):
                raise ContainmentError(f"component {k}: I_k is not contained in J_k")

    def __le__(self, other: "Submodule") -> bool:
        return all(J2.contains_ideal(J1) for J1, J2 in zip(self.ideals, other.ideals))

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.ideals == other.ideals

    def __hash__(self):
        return hash(self.ideals)

    def is_zero(self) -> bool:
        return all(I.contains_ideal(J) for I, J in zip(self.module.components, self.ideals))

    def is_whole(self) -> bool:
        return all(J.is_unit() for J in self.ideals)

    def annihilators(self) -> List[Ideal]:
        """``I_k : J_k`` for each component; ``Ann N`` is their intersection."""
        return [
            unit_ideal(I.ring) if J.is_zero() else ideal_colon(I, J)
            for I, J in zip(self.module.components, self.ideals)
        ]

    def as_module(self) -> Optional[QuotientModule]:
        """``N`` as a quotient module when each nonzero ``J_k/I_k`` is cyclic.

        A principal ``J_k = I_k + (g)`` gives ``J_k/I_k ≅ R/(I_k : g)`` up to
        a degree shift.  Returns ``None`` if some component is not of this form
        (tested against each generator of ``J_k`` in turn).
        """
        comps = []
        for I, J in zip(self.module.components, self.ideals):
            extra = [g for g in J.generators if not I.contains(g)]
            if not extra:
                continue
            if J.is_unit():
                comps.append(I)
                continue
            g = next((h for h in extra if Ideal(I.ring, I.generators + (h,)) == J), None)
            if g is None:
                return None
            comps.append(ideal_colon(I, Ideal(I.ring, [g])))
        if not comps:
            return None
        return QuotientModule(self.module.ring, tuple(comps))


def submodule_dimension(M: QuotientModule, N: Submodule) -> int:
    """``dim N = max_k dim R/(I_k : J_k)``; the zero submodule has dimension -1."""
    if N.module is not M and N.module != M:
        raise ContainmentError("submodule belongs to a different module")
    return max(krull_dimension(A) for A in N.annihilators())


@dataclass
class Filtration:
    """Ascending chain ``M_0 ⊆ M_1 ⊆ ... ⊆ M_t = M``."""

    module: QuotientModule
    chain: Tuple[Submodule, ...]
    dims: Tuple[int, ...] = ()

    def __post_init__(self):
        self.chain = tuple(self.chain)
        if not self.chain:
            raise ValueError("empty filtration")
        if not self.chain[-1].is_whole():
            raise ContainmentError("the last member of a filtration must be M")
        for i in range(1, len(self.chain)):
            if not self.chain[i - 1] <= self.chain[i]:
                raise ContainmentError(f"member {i - 1} is not contained in member {i}")
        if not self.dims:
            self.dims = tuple(submodule_dimension(self.module, N) for N in self.chain)

    @property
    def t(self) -> int:
        return len(self.chain) - 1

    def __len__(self):
        return len(self.chain)

    def __getitem__(self, i) -> Submodule:
        return self.chain[i]

    @classmethod
    def trivial(cls, M: QuotientModule) -> "Filtration":
        """``0 ⊂ M`` (just ``M`` when it has dimension at most 0)."""
        if M.dim <= 0:
            return cls(M, (M.whole(),))
        return cls(M, (M.zero(), M.whole()))

    def quotient_ideals(self, i: int) -> List[Ideal]:
        """Component ideals of ``M/M_i``, unit components included."""
        return list(self.chain[i].ideals)


def check_dimension_condition(F: Filtration) -> bool:
    return all(a < b for a, b in zip(F.dims, F.dims[1:]))


# -- irreducible decomposition ------------------------------------------------


def _minimize(monos) -> frozenset:
    ordered = sorted(set(monos), key=lambda m: (sum(m), m))
    out: List[Monomial] = []
    for m in ordered:
        if not any(mono_divides(u, m) for u in out):
            out.append(m)
    return frozenset(out)


@functools.lru_cache(maxsize=4096)
def _split(gens: frozenset) -> Tuple[frozenset, ...]:
    for m in sorted(gens, key=lambda m: (sum(m), m)):
        support = [i for i, e in enumerate(m) if e]
        if len(support) > 1:
            i = support[0]
            pure = tuple(m[i] if j == i else 0 for j in range(len(m)))
            rest = tuple(0 if j == i else e for j, e in enumerate(m))
            left = _minimize((gens - {m}) | {pure})
            right = _minimize((gens - {m}) | {rest})
            return _split(left) + _split(right)
    return (gens,)


def _irreducible_contains(big: frozenset, small: frozenset) -> bool:
    """For pure-power generator sets: ideal(small) ⊆ ideal(big)."""
    return all(any(mono_divides(b, s) for b in big) for s in small)


def monomial_irreducible_decomposition(I: Ideal) -> List[Ideal]:
    """Irredundant decomposition of a monomial ideal into pure-power ideals.

    The unit ideal yields the empty list.
    """
    if not I.is_monomial():
        raise ValueError("monomial_irreducible_decomposition needs a monomial ideal")
    ring = I.ring
    gens = frozenset(I.monomial_generators())
    if any(not any(m) for m in gens):
        return []
    pieces = list(dict.fromkeys(_split(gens)))
    keep = []
    for a in pieces:
        if any(b != a and _irreducible_contains(a, b) for b in pieces):
            continue
        keep.append(a)
    keep.sort(key=lambda s: sorted(s, reverse=True), reverse=True)
    return [Ideal(ring, [ring.monomial(m) for m in sorted(q, reverse=True)]) for q in keep]


def intersect_all(ring: PolyRing, ideals: Sequence[Ideal]) -> Ideal:
    """Intersection of a list of ideals (the unit ideal for an empty list)."""
    result = unit_ideal(ring)
    for q in ideals:
        result = ideal_intersection(result, q)
    return result


def _component_pieces(M: QuotientModule, k: int) -> List[Ideal]:
    if k in M.decompositions:
        return list(M.decompositions[k])
    I = M.components[k]
    if not I.is_monomial():
        raise ValueError(
            f"component {k} is not monomial; supply a primary decomposition for it"
        )
    return monomial_irreducible_decomposition(I)


def dimension_filtration(M: QuotientModule) -> Filtration:
    """The dimension filtration ``D_0 ⊂ D_1 ⊂ ... ⊂ D_t = M``.

    ``D_0`` is ``H^0_m(M)`` (possibly zero); each later member collects the
    decomposition pieces of dimension above its level.
    """
    ring = M.ring
    pieces = [[(krull_dimension(q), q) for q in _component_pieces(M, k)] for k in range(len(M))]
    d = M.dim
    if d <= 0:
        return Filtration(M, (M.whole(),))
    m = irrelevant_ideal(ring)
    D0 = M.submodule([saturation(I, m) for I in M.components])
    levels = sorted({dq for comp in pieces for dq, _ in comp if 0 < dq < d})
    chain = [D0]
    for delta in levels:
        ideals = [intersect_all(ring, [q for dq, q in comp if dq > delta]) for comp in pieces]
        chain.append(M.submodule(ideals))
    chain.append(M.whole())
    return Filtration(M, tuple(chain))


# -- lengths -----------------------------------------------------------------


def _ideal_pair_length(J: Ideal, Jp: Ideal):
    """``ℓ(J'/J)`` for ideals ``J ⊆ J'``."""
    if Jp.is_zero():
        return 0
    C = ideal_colon(J, Jp)
    ok, N = contains_power_of_irrelevant(C)
    if not ok:
        return INFINITE
    if J.is_homogeneous() and Jp.is_homogeneous():
        top = N + Jp.max_generator_degree()
        a = hilbert_function_values(J, top)
        b = hilbert_function_values(Jp, top)
        a += [0] * (top + 1 - len(a))
        b += [0] * (top + 1 - len(b))
        return sum(x - y for x, y in zip(a, b))
    la = vector_space_length(J)
    if la is INFINITE:
        raise ValueError("subquotient length of non-homogeneous ideals needs R/J of finite length")
    return la - vector_space_length(Jp)


def subquotient_length(M: QuotientModule, N: Submodule, Np: Submodule):
    """``ℓ(N'/N)`` for ``N ⊆ N'``, or :data:`INFINITE`."""
    if not N <= Np:
        raise ContainmentError("subquotient_length needs N ⊆ N'")
    total = 0
    for J, Jp in zip(N.ideals, Np.ideals):
        part = _ideal_pair_length(J, Jp)
        if part is INFINITE:
            return INFINITE
        total += part
    return total


def h0_length(M: QuotientModule) -> int:
    """``ℓ(H^0_m(M)) = Σ_k ℓ(I_k^sat / I_k)``."""
    m = irrelevant_ideal(M.ring)
    return sum(_ideal_pair_length(I, saturation(I, m)) for I in M.components)


__all__ = [
    "ContainmentError",
    "Filtration",
    "QuotientModule",
    "Submodule",
    "check_dimension_condition",
    "dimension_filtration",
    "h0_length",
    "intersect_all",
    "monomial_irreducible_decomposition",
    "subquotient_length",
    "submodule_dimension",
    "unit_ideal",
]
