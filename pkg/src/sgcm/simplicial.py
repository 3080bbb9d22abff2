"""Stanley-Reisner complexes and local cohomology lengths via Hochster's formula.

For a squarefree monomial ideal ``I`` with complex ``Δ`` the graded pieces
of ``H^j_m(R/I)`` are reduced homology groups of links of faces.  A nonempty
face contributes in infinitely many degrees, the empty face in exactly one,
which gives the finite-length test and the length formula used here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .exactalg import INFINITE, Ideal, krull_dimension
from .exactalg.linalg import matrix_rank

Face = FrozenSet[str]


def _maximal(sets) -> Tuple[Face, ...]:
    uniq = sorted(set(frozenset(s) for s in sets), key=lambda s: (-len(s), sorted(s)))
    out: List[Face] = []
    for s in uniq:
        if not any(s <= f for f in out):
            out.append(s)
    return tuple(sorted(out, key=lambda s: (-len(s), sorted(s))))


@dataclass(frozen=True)
class SimplicialComplex:
    """A complex given by its facets.

    ``facets == ()`` is the void complex (no faces at all) while
    ``facets == (frozenset(),)`` is ``{∅}``.
    """

    vertices: Tuple[str, ...]
    facets: Tuple[Face, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        facets = _maximal(self.facets)
        for f in facets:
            if not f <= set(self.vertices):
                raise ValueError(f"facet {sorted(f)} uses unknown vertices")
        object.__setattr__(self, "facets", facets)

    @classmethod
    def void(cls, vertices=()) -> "SimplicialComplex":
        return cls(tuple(vertices), ())

    @classmethod
    def simplex(cls, vertices) -> "SimplicialComplex":
        return cls(tuple(vertices), (frozenset(vertices),))

    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        """Dimension; the void complex gets -2 so that ``{∅}`` has -1."""
        if not self.facets:
            return -2
        return max(len(f) for f in self.facets) - 1

    def faces(self) -> List[Face]:
        seen = set()
        for f in self.facets:
            items = sorted(f)
            for r in range(len(items) + 1):
                for sub in itertools.combinations(items, r):
                    seen.add(frozenset(sub))
        return sorted(seen, key=lambda s: (len(s), sorted(s)))

    def contains_face(self, sigma) -> bool:
        sigma = frozenset(sigma)
        return any(sigma <= f for f in self.facets)

    def f_vector(self) -> List[int]:
        """``f[i+1]`` = number of faces of dimension ``i`` (``f[0]`` counts ∅)."""
        out = [0] * (self.dim + 2) if self.facets else []
        for s in self.faces():
            out[len(s)] += 1
        return out

    def __str__(self):
        if not self.facets:
            return "void"
        return "{" + ", ".join("{" + ",".join(sorted(f, key=self.vertices.index)) + "}" for f in self.facets) + "}"


def stanley_reisner_complex(I: Ideal) -> SimplicialComplex:
    """The complex whose faces are the squarefree monomials outside ``I``."""
    if not I.is_squarefree_monomial():
        raise ValueError("Stanley-Reisner complex needs a squarefree monomial ideal")
    names = I.ring.variables
    n = len(names)
    nonfaces = [frozenset(i for i, e in enumerate(m) if e) for m in I.monomial_generators()]
    if any(not s for s in nonfaces):
        return SimplicialComplex.void(names)
    faces = []
    for r in range(n, -1, -1):
        for S in itertools.combinations(range(n), r):
            s = frozenset(S)
            if not any(nf <= s for nf in nonfaces) and not any(s <= f for f in faces):
                faces.append(s)
    return SimplicialComplex(names, tuple(frozenset(names[i] for i in f) for f in faces))


def link(delta: SimplicialComplex, sigma) -> SimplicialComplex:
    sigma = frozenset(sigma)
    if not delta.contains_face(sigma):
        raise ValueError(f"{sorted(sigma)} is not a face")
    return SimplicialComplex(delta.vertices, tuple(f - sigma for f in delta.facets if sigma <= f))


def _boundary_matrix(lower: Sequence[Face], upper: Sequence[Face], order: Dict[str, int]):
    """Matrix of ∂ from faces of size ``k`` (columns) to size ``k-1`` (rows)."""
    index = {f: i for i, f in enumerate(lower)}
    rows = [[0] * len(upper) for _ in lower]
    for j, f in enumerate(upper):
        verts = sorted(f, key=order.__getitem__)
        for pos, v in enumerate(verts):
            rows[index[f - {v}]][j] = -1 if pos % 2 else 1
    return rows


def reduced_homology_ranks(delta: SimplicialComplex, field=None) -> List[int]:
    """``[rank H̃_{-1}, rank H̃_0, ..., rank H̃_{dim Δ}]`` over ``field`` (Q by default).

    The void complex gives ``[0]``.
    """
    if delta.is_void():
        return [0]
    p = getattr(field, "p", None) if field is not None else None
    order = {v: i for i, v in enumerate(delta.vertices)}
    by_size: Dict[int, List[Face]] = {}
    for s in delta.faces():
        by_size.setdefault(len(s), []).append(s)
    top = delta.dim + 1  # largest face size
    ranks = {}
    for k in range(1, top + 1):
        ranks[k] = matrix_rank(_boundary_matrix(by_size.get(k - 1, []), by_size.get(k, []), order), p)
    out = []
    for k in range(0, top + 1):
        ck = len(by_size.get(k, []))
        out.append(ck - ranks.get(k, 0) - ranks.get(k + 1, 0))
    return out


def reduced_homology(delta: SimplicialComplex, i: int, field=None) -> int:
    """``rank H̃_i(Δ)``, zero outside the computed range."""
    ranks = reduced_homology_ranks(delta, field)
    return ranks[i + 1] if 0 <= i + 1 < len(ranks) else 0


def local_cohomology_length(I: Ideal, j: int):
    """``ℓ(H^j_m(R/I))`` for squarefree monomial ``I``, or :data:`INFINITE`."""
    if j < 0:
        raise ValueError("cohomological degree must be non-negative")
    if not I.is_squarefree_monomial():
        raise ValueError(
            "Hochster route needs a squarefree monomial ideal; use the parametric route instead"
        )
    delta = stanley_reisner_complex(I)
    if delta.is_void():
        return 0
    field = I.ring.field
    for sigma in delta.faces():
        if sigma and reduced_homology(link(delta, sigma), j - len(sigma) - 1, field):
            return INFINITE
    return reduced_homology(delta, j - 1, field)


@dataclass(frozen=True)
class CohomologicalGcm:
    """Outcome of the cohomological gCM test."""

    is_gcm: bool
    invariant: Optional[int]
    lengths: Tuple[object, ...]

    def __iter__(self):
        return iter((self.is_gcm, self.invariant))


def is_gcm_cohomological(I: Ideal) -> CohomologicalGcm:
    """gCM test for ``R/I`` and, when it passes, ``I(R/I) = Σ C(d-1,j) ℓ(H^j)``."""
    d = krull_dimension(I)
    lengths = tuple(local_cohomology_length(I, j) for j in range(max(d, 0)))
    if any(v is INFINITE for v in lengths):
        return CohomologicalGcm(False, None, lengths)
    return CohomologicalGcm(True, sum(comb(d - 1, j) * v for j, v in enumerate(lengths)), lengths)


__all__ = [
    "CohomologicalGcm",
    "SimplicialComplex",
    "is_gcm_cohomological",
    "link",
    "local_cohomology_length",
    "reduced_homology",
    "reduced_homology_ranks",
    "stanley_reisner_complex",
]
