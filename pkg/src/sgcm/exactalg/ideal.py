"""Ideals of a polynomial ring and the ideal-level operations built on them."""

from __future__ import annotations

import itertools
from functools import total_ordering
from typing import Iterable, List, Optional, Sequence, Tuple

from .groebner import GroebnerBasis, buchberger, reduce_polynomial
from .poly import Monomial, PolyRing, Polynomial, mono_divides, mono_gcd, mono_lcm


@total_ordering
class _Infinite:
    """Length of a module that is not of finite length."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("infinite-length")

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


def is_finite(value) -> bool:
    return value is not INFINITE


class Ideal:
    """An ideal given by generators, with Groebner bases cached per order."""

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring(g)
            elif g.ring is not ring:
                g = ring(g)
            if g.terms:
                gens.append(g)
        self.ring = ring
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._gb = {}

    def __getstate__(self):
        return {"ring": self.ring, "generators": self.generators, "_gb": self._gb}

    def __setstate__(self, state):
        self.__dict__.update(state)

    # -- Groebner machinery ---------------------------------------------------

    def gb(self, order=None) -> GroebnerBasis:
        order = self.ring.order if order is None else order
        cached = self._gb.get(order)
        if cached is None:
            ring = self.ring.with_order(order)
            if self.is_monomial():
                elems = [ring.monomial(m) for m in self._minimal_monomials()]
                elems.sort(key=lambda g: ring.key(g.lm()))
            else:
                elems = buchberger([g.in_ring(ring) for g in self.generators], ring)
            cached = GroebnerBasis(tuple(elems), order, ring)
            self._gb[order] = cached
        return cached

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.gb())

    def contains(self, f) -> bool:
        if not isinstance(f, Polynomial):
            f = self.ring(f)
        return not self.normal_form(f).terms

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        _check_same_ring(self, other)
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring.variables != other.ring.variables:
            return False
        return [g.terms for g in self.gb()] == [g.terms for g in other.gb()]

    def __hash__(self):
        return hash(tuple(frozenset(g.terms.items()) for g in self.gb()))

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators) or '0'})"

    __str__ = __repr__

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def is_squarefree_monomial(self) -> bool:
        return self.is_monomial() and all(e <= 1 for g in self.generators for e in g.lm())

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def _minimal_monomials(self) -> List[Monomial]:
        monos = sorted({g.lm() for g in self.generators}, key=lambda m: (sum(m), m))
        out: List[Monomial] = []
        for m in monos:
            if not any(mono_divides(u, m) for u in out):
                out.append(m)
        return out

    def monomial_generators(self) -> List[Monomial]:
        """Minimal monomial generators (monomial ideals only)."""
        if not self.is_monomial():
            raise ValueError("ideal is not monomial")
        return self._minimal_monomials()

    def leading_monomials(self) -> List[Monomial]:
        """Minimal generators of the leading-term ideal."""
        return self.gb().leading_monomials()

    def max_generator_degree(self) -> int:
        return max((sum(g.lm()) if g.is_homogeneous() else int(g.degree()) for g in self.generators), default=0)


def _check_same_ring(I: Ideal, J: Ideal):
    if I.ring.variables != J.ring.variables or I.ring.field != J.ring.field:
        raise ValueError("ring mismatch")


# -- spec-level operations ------------------------------------------------------


def groebner_basis(I: Ideal, order=None) -> GroebnerBasis:
    return I.gb(order)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ring.order != G.order:
        if f.ring.variables != G.ring.variables:
            raise ValueError("ring mismatch")
        if f.ring is not G.ring and f.ring.order != G.ring.order:
            raise ValueError(f"order mismatch: {f.ring.order!r} vs {G.order!r}")
    f = f.in_ring(G.ring)
    return reduce_polynomial(f, list(G.elements))


def ideal_sum(*ideals: Ideal) -> Ideal:
    ring = ideals[0].ring
    for J in ideals[1:]:
        _check_same_ring(ideals[0], J)
    return Ideal(ring, [g for I in ideals for g in I.generators])


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    if I.is_monomial() and J.is_monomial():
        prods = {tuple(a + b for a, b in zip(u, v)) for u in I.monomial_generators() for v in J.monomial_generators()}
        return Ideal(I.ring, [I.ring.monomial(m) for m in sorted(prods)])
    return Ideal(I.ring, [f * g for f in I.generators for g in J.generators])


def ideal_power(I: Ideal, n: int) -> Ideal:
    """``I^n`` from all degree-``n`` products of the generators."""
    if n == 0:
        return Ideal(I.ring, [I.ring.one()])
    gens = []
    for combo in itertools.combinations_with_replacement(range(len(I.generators)), n):
        p = I.ring.one()
        for k in combo:
            p = p * I.generators[k]
        gens.append(p)
    return Ideal(I.ring, gens)


def _fresh_name(ring: PolyRing, stem: str = "t") -> str:
    name = f"_{stem}"
    while name in ring.variables:
        name += "_"
    return name


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1-t)*J``.

    Monomial ideals take the lcm shortcut instead.
    """
    _check_same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    if I.is_unit():
        return Ideal(ring, J.generators)
    if J.is_unit():
        return Ideal(ring, I.generators)
    if I.is_monomial() and J.is_monomial():
        lcms = {mono_lcm(u, v) for u in I.monomial_generators() for v in J.monomial_generators()}
        return Ideal(ring, [ring.monomial(m) for m in Ideal(ring, [ring.monomial(m) for m in lcms]).monomial_generators()])
    return _eliminate_intersection([I, J])


def _eliminate_intersection(ideals: Sequence[Ideal]) -> Ideal:
    ring = ideals[0].ring
    big = ring.extend([_fresh_name(ring)], front=True, order=("elim", 1))
    t = big.var(0)
    one = big.one()

    def lift(f: Polynomial) -> Polynomial:
        return Polynomial(big, {(0,) + m: c for m, c in f.terms.items()})

    I, J = ideals
    gens = [t * lift(f) for f in I.generators] + [(one - t) * lift(g) for g in J.generators]
    weights = (0,) + (1,) * ring.nvars
    basis = buchberger(gens, big, weights)
    kept = [Polynomial(ring, {m[1:]: c for m, c in g.terms.items()}) for g in basis if not g.lm()[0]]
    return Ideal(ring, kept)


def substitute(f: Polynomial, images: Sequence[Polynomial], target: PolyRing) -> Polynomial:
    """``f(images[0], ..., images[n-1])`` as a polynomial of ``target``."""
    out = target.zero()
    powers: dict = {}
    for m, c in f.terms.items():
        term = target.constant(c)
        for i, e in enumerate(m):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = images[i] ** e
                term = term * powers[key]
        out = out + term
    return out


def _is_linear_form(g: Polynomial) -> bool:
    return bool(g.terms) and all(sum(m) == 1 for m in g.terms)


def colon_linear_form(I: Ideal, form: Polynomial) -> Ideal:
    """``I : (form)`` for homogeneous ``I`` and a linear form.

    After a linear change of coordinates the form becomes the last variable
    of a grevlex ring, where the colon is read off a Groebner basis by
    dividing each element by that variable once.
    """
    ring = I.ring
    n = ring.nvars
    coeffs = {m.index(1): c for m, c in form.terms.items()}
    k = max(coeffs)
    perm = [i for i in range(n) if i != k] + [k]
    new = PolyRing(tuple(ring.variables[i] for i in perm), ring.field, "grevlex")
    y = new.gens()
    pos = {i: perm.index(i) for i in range(n)}
    F = ring.field
    inv = F.inv(coeffs[k])
    xk = y[n - 1]
    for i, c in coeffs.items():
        if i != k:
            xk = xk - y[pos[i]].scale(c)
    xk = xk.scale(inv)
    forward = [xk if i == k else y[pos[i]] for i in range(n)]
    gens = [substitute(g, forward, new) for g in I.generators]
    G = buchberger(gens, new) if gens else []
    divided = []
    for g in G:
        if all(m[n - 1] >= 1 for m in g.terms):
            g = Polynomial(new, {m[:-1] + (m[-1] - 1,): c for m, c in g.terms.items()})
        divided.append(g)
    back = [None] * n
    for i in range(n):
        back[pos[i]] = form if i == k else ring.var(i)
    return Ideal(ring, [substitute(g, back, ring) for g in divided])


def _colon_principal(I: Ideal, g: Polynomial) -> Ideal:
    ring = I.ring
    if I.is_monomial() and g.is_monomial():
        u = g.lm()
        gens = [tuple(a - b for a, b in zip(m, mono_gcd(m, u))) for m in I.monomial_generators()]
        return Ideal(ring, [ring.monomial(m) for m in gens])
    if _is_linear_form(g) and I.is_homogeneous():
        return colon_linear_form(I, g)
    if I.contains(g):
        return Ideal(ring, [ring.one()])
    inter = ideal_intersection(I, Ideal(ring, [g]))
    return Ideal(ring, [h.exact_div(g) for h in inter.generators])


def ideal_colon(I: Ideal, J: Ideal) -> Ideal:
    """``I : J`` as the intersection of ``I : g`` over the generators of ``J``."""
    _check_same_ring(I, J)
    if J.is_zero():
        raise ValueError("colon by zero ideal")
    result: Optional[Ideal] = None
    for g in J.generators:
        part = _colon_principal(I, g)
        result = part if result is None else ideal_intersection(result, part)
    return Ideal(I.ring, result.gb().elements)


def saturation(I: Ideal, J: Ideal) -> Ideal:
    """``I : J^∞``, iterating colons until the Groebner basis stabilizes."""
    current = Ideal(I.ring, I.gb().elements)
    while True:
        nxt = ideal_colon(current, J)
        if nxt == current:
            return current
        current = nxt


def irrelevant_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, ring.gens())


def _independent_dimension(monos: Sequence[Monomial], n: int) -> int:
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in monos]
    if any(not s for s in supports):
        return -1
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            s = set(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def krull_dimension(I: Ideal) -> int:
    """dim R/I via maximal independent sets of the leading-term ideal; -1 for R/R."""
    if I.is_zero():
        return I.ring.nvars
    return _independent_dimension(I.leading_monomials(), I.ring.nvars)


def _standard_layers(lead: Sequence[Monomial], n: int):
    """Yield the degree-d standard monomials of ``lead`` for d = 0, 1, ..."""
    layer = [] if any(not any(m) for m in lead) else [(0,) * n]
    if not lead and n == 0:
        layer = [()]
    while True:
        yield layer
        nxt = set()
        for m in layer:
            for i in range(n):
                u = m[:i] + (m[i] + 1,) + m[i + 1 :]
                if u not in nxt and not any(mono_divides(v, u) for v in lead):
                    nxt.add(u)
        layer = sorted(nxt)


def standard_monomials(I: Ideal) -> List[Monomial]:
    """All standard monomials of a zero-dimensional ideal."""
    if krull_dimension(I) > 0:
        raise ValueError("infinitely many standard monomials")
    out = []
    for layer in _standard_layers(I.leading_monomials(), I.ring.nvars):
        if not layer:
            return out
        out.extend(layer)


def vector_space_length(I: Ideal):
    """dim_k R/I, or :data:`INFINITE` when the quotient has positive dimension."""
    if krull_dimension(I) > 0:
        return INFINITE
    return len(standard_monomials(I))


def hilbert_function_values(I: Ideal, top: int) -> List[int]:
    """``[HF(R/I, 0), ..., HF(R/I, top)]``."""
    out = []
    for layer in _standard_layers(I.leading_monomials(), I.ring.nvars):
        if len(out) > top:
            break
        out.append(len(layer))
    return out


def hilbert_function(I: Ideal, d: int) -> int:
    if d < 0:
        raise ValueError("degree must be non-negative")
    for k, layer in enumerate(_standard_layers(I.leading_monomials(), I.ring.nvars)):
        if k == d:
            return len(layer)
        if not layer:
            return 0


def _monomials_of_degree(n: int, d: int):
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def contains_power_of_irrelevant(I: Ideal) -> Tuple[bool, Optional[int]]:
    """Whether ``m^N ⊆ I`` for some N, and the least such N."""
    if krull_dimension(I) > 0:
        return False, None
    n = I.ring.nvars
    if I.is_homogeneous():
        for N, layer in enumerate(_standard_layers(I.leading_monomials(), n)):
            if not layer:
                return True, N
    G = I.gb()
    for N in itertools.count():
        if all(not normal_form(I.ring.monomial(m), G).terms for m in _monomials_of_degree(n, N)):
            return True, N
