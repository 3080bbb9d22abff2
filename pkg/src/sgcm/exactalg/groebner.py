"""Buchberger's algorithm with the normal selection strategy.

Polynomials are handled here as plain ``dict`` term maps for speed; the
public entry points take and return :class:`Polynomial` objects.  Pair
pruning follows Gebauer and Moeller.  Every choice (input order, pair
selection, tie breaks) is deterministic, so the same input always yields
the same reduced basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Monomial, PolyRing, Polynomial, mono_div, mono_divides, mono_lcm, mono_mul

Terms = Dict[Monomial, object]


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic elements sorted by leading monomial."""

    elements: Tuple[Polynomial, ...]
    order: object
    ring: PolyRing

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def leading_monomials(self) -> List[Monomial]:
        return [g.lm() for g in self.elements]

    def is_unit(self) -> bool:
        return any(not any(m) for m in self.leading_monomials())


class _Reducer:
    """Full reduction of term maps against a list of monic polynomials."""

    def __init__(self, ring: PolyRing):
        self.key = ring.key
        self.p = ring.field.p
        self.inv = ring.field.inv

    def reduce(self, f: Terms, basis: Sequence[Tuple[Monomial, Terms]]) -> Terms:
        key = self.key
        p = self.p
        f = dict(f)
        rem: Terms = {}
        while f:
            m = max(f, key=key)
            c = f[m]
            for glm, gterms in basis:
                if mono_divides(glm, m):
                    q = mono_div(m, glm)
                    for gm, gc in gterms.items():
                        mm = mono_mul(gm, q)
                        v = f.get(mm, 0) - c * gc
                        if p:
                            v %= p
                        if v:
                            f[mm] = v
                        else:
                            del f[mm]
                    break
            else:
                rem[m] = c
                del f[m]
        return rem

    def monic(self, f: Terms) -> Tuple[Monomial, Terms]:
        m = max(f, key=self.key)
        inv = self.inv(f[m])
        if self.p:
            return m, {k: v * inv % self.p for k, v in f.items()}
        if inv == 1:
            return m, f
        return m, {k: v * inv for k, v in f.items()}


def _spoly(a: Tuple[Monomial, Terms], b: Tuple[Monomial, Terms], p: int) -> Terms:
    lcm = mono_lcm(a[0], b[0])
    qa = mono_div(lcm, a[0])
    qb = mono_div(lcm, b[0])
    out: Terms = {}
    for m, c in a[1].items():
        out[mono_mul(m, qa)] = c
    for m, c in b[1].items():
        mm = mono_mul(m, qb)
        v = out.get(mm, 0) - c
        if p:
            v %= p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def buchberger(
    polys: Sequence[Polynomial], ring: Optional[PolyRing] = None, weights: Optional[Sequence[int]] = None
) -> List[Polynomial]:
    """Reduced Groebner basis of ``polys`` with respect to ``ring.order``.

    ``weights`` only steer pair selection (the "sugar" of a pair is the
    weighted degree of its lcm); they default to the standard grading.
    """
    if ring is None:
        if not polys:
            raise ValueError("ring required for an empty generator list")
        ring = polys[0].ring
    red = _Reducer(ring)
    key = ring.key
    p = ring.field.p
    w = tuple(weights) if weights is not None else (1,) * ring.nvars

    def wdeg(m):
        return sum(a * b for a, b in zip(m, w))

    gens = [dict(f.terms) for f in polys if f.terms]
    gens.sort(key=lambda t: (key(max(t, key=key)), sorted(key(m) for m in t)))

    f: List[Tuple[Monomial, Terms]] = []
    G: List[int] = []
    B: List[Tuple[int, int]] = []

    def lcm_of(i, j):
        return mono_lcm(f[i][0], f[j][0])

    def update(ih: int):
        nonlocal G, B
        mh = f[ih][0]
        C = list(G)
        D: List[Tuple[int, int]] = []
        while C:
            ig = C.pop(0)
            mg = f[ig][0]
            lhg = mono_lcm(mh, mg)
            if _coprime(mh, mg):
                D.append((ih, ig))
                continue
            redundant = any(mono_divides(mono_lcm(mh, f[x][0]), lhg) for x in C) or any(
                mono_divides(mono_lcm(mh, f[x[1]][0]), lhg) for x in D
            )
            if not redundant:
                D.append((ih, ig))
        E = [(a, b) for a, b in D if not _coprime(mh, f[b][0])]
        B_new = []
        for a, b in B:
            l12 = lcm_of(a, b)
            if (
                not mono_divides(mh, l12)
                or mono_lcm(f[a][0], mh) == l12
                or mono_lcm(f[b][0], mh) == l12
            ):
                B_new.append((a, b))
        B = B_new + E
        G = [g for g in G if not mono_divides(mh, f[g][0])] + [ih]

    for t in gens:
        h = red.reduce(t, [f[g] for g in G])
        if h:
            lm, terms = red.monic(h)
            if not any(lm):
                return [ring.one()]
            f.append((lm, terms))
            update(len(f) - 1)

    while B:
        best = min(
            range(len(B)),
            key=lambda k: (wdeg(lcm_of(*B[k])), key(lcm_of(*B[k])), min(B[k]), max(B[k])),
        )
        i, j = B.pop(best)
        s = _spoly(f[i], f[j], p)
        if not s:
            continue
        h = red.reduce(s, [f[g] for g in sorted(G)])
        if h:
            lm, terms = red.monic(h)
            if not any(lm):
                return [ring.one()]
            f.append((lm, terms))
            update(len(f) - 1)

    # interreduce the minimal basis
    basis = sorted((f[g] for g in G), key=lambda t: key(t[0]))
    out = []
    for idx, (lm, terms) in enumerate(basis):
        others = basis[:idx] + basis[idx + 1 :]
        tail = dict(terms)
        c = tail.pop(lm)
        tail = red.reduce(tail, others)
        tail[lm] = c
        out.append(Polynomial(ring, tail))
    return out


def reduce_polynomial(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Full reduction of ``f`` by a list of polynomials (monic or not)."""
    ring = f.ring
    red = _Reducer(ring)
    monic = [red.monic(dict(g.terms)) for g in basis if g.terms]
    return Polynomial(ring, red.reduce(f.terms, monic))
