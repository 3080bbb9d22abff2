"""Sparse multivariate polynomials over exact fields.

A monomial is a tuple of non-negative exponents, one per ring variable.  A
polynomial stores a dict ``monomial -> nonzero coefficient``.  The monomial
order lives on the ring and is exposed as a sort key: a larger key means a
larger monomial.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

from .field import QQ, FieldSpec

Monomial = Tuple[int, ...]


@functools.total_ordering
class _MinusInfinity:
    """Degree of the zero polynomial.  Smaller than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf-degree")

    def __repr__(self):
        return "-inf"

    def __reduce__(self):
        return (_MinusInfinity, ())


MINUS_INFINITY = _MinusInfinity()


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Monomial):
    return m


def _parse_order(order) -> Tuple[str, int]:
    if order in ("grevlex", "lex"):
        return order, 0
    if isinstance(order, tuple) and len(order) == 2 and order[0] == "elim":
        return "elim", int(order[1])
    if isinstance(order, str) and order.startswith("elim"):
        return "elim", int(order[4:].strip("(): "))
    raise ValueError(f"unknown monomial order {order!r}")


def order_key(order):
    """Return the sort-key function of a monomial-order tag.

    ``("elim", k)`` is the block order that compares the first ``k`` variables
    by grevlex and breaks ties with grevlex on the rest; it eliminates the
    first block.
    """
    kind, k = _parse_order(order)
    if kind == "grevlex":
        return grevlex_key
    if kind == "lex":
        return lex_key

    def elim_key(m):
        return (grevlex_key(m[:k]), grevlex_key(m[k:]))

    return elim_key


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x < y else y for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    """k[variables] with a monomial order (grevlex unless told otherwise)."""

    variables: Tuple[str, ...]
    field: FieldSpec = QQ
    order: Union[str, Tuple[str, int]] = "grevlex"
    _keycache: dict = dc_field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be unique")
        _parse_order(self.order)

    def __getstate__(self):
        return {"variables": self.variables, "field": self.field, "order": self.order}

    def __setstate__(self, state):
        for k, v in state.items():
            object.__setattr__(self, k, v)
        object.__setattr__(self, "_keycache", {})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, m: Monomial):
        try:
            return self._keycache[m]
        except KeyError:
            k = self._keycache[m] = order_key(self.order)(m)
            return k

    def with_order(self, order) -> "PolyRing":
        if order == self.order:
            return self
        return PolyRing(self.variables, self.field, order)

    def extend(self, names: Iterable[str], front: bool = True, order=None) -> "PolyRing":
        names = tuple(names)
        variables = names + self.variables if front else self.variables + names
        return PolyRing(variables, self.field, order or self.order)

    # -- element constructors -------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.variables.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(tuple(e))

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring.variables != self.variables or value.ring.field != self.field:
                raise ValueError("ring mismatch")
            return Polynomial(self, value.terms)
        if isinstance(value, str):
            from .parse import parse_polynomial

            return parse_polynomial(value, self)
        return self.constant(value)

    def __str__(self) -> str:
        return f"{self.field}[{','.join(self.variables)}]"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` never holds a zero coefficient."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, object]):
        self.ring = ring
        self.terms = terms
        self._lm = None

    def __getstate__(self):
        return (self.ring, self.terms)

    def __setstate__(self, state):
        self.ring, self.terms = state
        self._lm = None

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def lm(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        if self._lm is None:
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def lc(self):
        return self.terms[self.lm()]

    def degree(self):
        if not self.terms:
            return MINUS_INFINITY
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.lm()))

    def support(self) -> frozenset:
        """Indices of variables that occur in some term."""
        return frozenset(i for m in self.terms for i, e in enumerate(m) if e)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.lc())
        return self.scale(inv)

    def in_ring(self, ring: PolyRing) -> "Polynomial":
        """Same terms viewed in ``ring`` (same variables, maybe another order)."""
        if ring.variables != self.ring.variables:
            raise ValueError("ring mismatch")
        return Polynomial(ring, self.terms)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.variables != self.ring.variables or other.ring.field != self.ring.field:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        return Polynomial(self.ring, {m: (-c) % p if p else -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c) if not isinstance(c, Fraction) or self.ring.field.p else c
        if not c:
            return self.ring.zero()
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {mono_mul(m, mono): v * c % p for m, v in self.terms.items()})
        return Polynomial(self.ring, {mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        out: Dict[Monomial, object] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        if p:
            out = {m: c % p for m, c in out.items()}
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if ``other`` does not divide."""
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        F = self.ring.field
        glm = other.lm()
        ginv = F.inv(other.terms[glm])
        rest = self
        quot: Dict[Monomial, object] = {}
        while rest.terms:
            m = rest.lm()
            if not mono_divides(glm, m):
                raise ValueError("division is not exact")
            q = mono_div(m, glm)
            c = rest.terms[m] * ginv
            if F.p:
                c %= F.p
            quot[q] = c
            rest = rest - other.mul_term(q, c)
        return Polynomial(self.ring, quot)

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.variables == other.ring.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.variables, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            if self.ring.field.p and c > self.ring.field.p // 2:
                c = c - self.ring.field.p
            neg = c < 0
            a = -c if neg else c
            if mono:
                s = mono if a == 1 else f"{a}*{mono}"
            else:
                s = str(a)
            parts.append(("- " if neg else "+ ") + s)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]
