import itertools

import pytest
from hypothesis import given, strategies as st

from sgcm.exactalg import INFINITE, Ideal, PolyRing, krull_dimension, vector_space_length
from sgcm.modules import (
    ContainmentError,
    Filtration,
    QuotientModule,
    check_dimension_condition,
    dimension_filtration,
    h0_length,
    intersect_all,
    monomial_irreducible_decomposition,
    subquotient_length,
    submodule_dimension,
)

R4 = PolyRing(("x", "y", "z", "w"))
R2 = PolyRing(("x", "y"))
R3 = PolyRing(("x", "y", "z"))


def gens_of(ideals):
    return [sorted(str(g) for g in J.generators) for J in ideals]


# -- QuotientModule / Submodule --------------------------------------------------


def test_module_validation():
    with pytest.raises(ValueError):
        QuotientModule(R2, ())
    with pytest.raises(ValueError):
        QuotientModule.cyclic(Ideal(R2, [1]))
    M = QuotientModule.cyclic(Ideal(R2, ["x"]))
    with pytest.raises(ContainmentError):
        M.submodule([Ideal(R2, ["y"])])
    with pytest.raises(ContainmentError):
        M.submodule([Ideal(R2, ["x"]), Ideal(R2, ["x"])])


def test_direct_sum_dimension(ex55):
    assert ex55.M.dim == 3
    assert len(ex55.M) == 2


def test_submodule_dimension(ex47):
    M, D = ex47.M, ex47.D
    assert submodule_dimension(M, D.chain[1]) == 2
    assert submodule_dimension(M, M.zero()) == -1
    assert submodule_dimension(M, M.whole()) == M.dim == 3


def test_filtration_requires_ascending_chain_ending_at_m():
    M = QuotientModule.cyclic(Ideal(R2, ["x*y"]))
    with pytest.raises(ContainmentError):
        Filtration(M, (M.zero(),))
    big = M.submodule([Ideal(R2, ["x"])])
    small = M.submodule([Ideal(R2, ["x*y", "x^2"])])
    with pytest.raises(ContainmentError):
        Filtration(M, (big, small, M.whole()))


def test_dimension_condition_examples(ex56):
    assert ex56.F.dims == (-1, 2, 3)
    assert check_dimension_condition(ex56.F)
    M = ex56.M
    assert check_dimension_condition(Filtration(M, (M.zero(), M.whole())))
    # x*w does not raise the dimension: (xy,xz,xw) and (x) both give dimension 2 pieces
    same = Filtration(M, (M.zero(), ex56.F.chain[1], ex56.D.chain[1], M.whole()))
    assert same.dims == (-1, 2, 2, 3)
    assert not check_dimension_condition(same)


# -- irreducible decomposition -------------------------------------------------


def test_irreducible_decomposition_examples():
    assert gens_of(monomial_irreducible_decomposition(Ideal(R4, ["x*y", "x*z"]))) == [["x"], ["y", "z"]]
    R = PolyRing(("x", "y", "z", "t", "w"))
    got = gens_of(monomial_irreducible_decomposition(Ideal(R, ["y*t", "y*w", "z*t", "z*w"])))
    assert sorted(got) == [["t", "w"], ["y", "z"]]
    assert sorted(gens_of(monomial_irreducible_decomposition(Ideal(R2, ["x^2*y"])))) == [["x^2"], ["y"]]
    with pytest.raises(ValueError):
        monomial_irreducible_decomposition(Ideal(R2, ["x + y"]))
    assert monomial_irreducible_decomposition(Ideal(R2, [1])) == []


@st.composite
def monomial_ideals(draw, ring=R3, max_exp=2, squarefree=False):
    top = 1 if squarefree else max_exp
    exps = draw(st.lists(st.tuples(*[st.integers(0, top)] * ring.nvars).filter(any), min_size=1, max_size=4))
    return Ideal(ring, [ring.monomial(e) for e in exps])


@given(monomial_ideals())
def test_irreducible_decomposition_intersects_back(I):
    pieces = monomial_irreducible_decomposition(I)
    assert intersect_all(I.ring, pieces) == I
    for q in pieces:
        gens = q.monomial_generators()
        assert all(sum(1 for e in m if e) == 1 for m in gens)
    # irredundant: dropping any piece changes the intersection
    for k in range(len(pieces)):
        rest = pieces[:k] + pieces[k + 1:]
        if rest:
            assert intersect_all(I.ring, rest) != I


# -- dimension filtration -------------------------------------------------------


def test_dimension_filtration_examples(ex47):
    M = QuotientModule.cyclic(Ideal(R4, ["x*y", "x*z"]))
    D = dimension_filtration(M)
    assert D.dims == (-1, 2, 3)
    assert D.chain[1].ideals[0] == Ideal(R4, ["x"])
    assert ex47.D.dims == (-1, 2, 3)
    assert ex47.D.chain[0].is_zero()
    assert ex47.D.chain[1].ideals[0] == ex47.I
    Dx = dimension_filtration(QuotientModule.cyclic(Ideal(R4, ["x"])))
    assert Dx.dims == (-1, 3)


def test_dimension_filtration_absorbs_h0():
    M = QuotientModule.cyclic(Ideal(R2, ["x^2", "x*y"]))
    D = dimension_filtration(M)
    assert D.dims == (0, 1)
    assert D.chain[0].ideals[0] == Ideal(R2, ["x"])


def test_dimension_filtration_direct_sum(ex55):
    D = ex55.D
    assert D.dims == (-1, 1, 3)
    assert [J.is_unit() for J in D.chain[1].ideals] == [True, False]


def test_nonmonomial_component_needs_decomposition():
    M = QuotientModule.cyclic(Ideal(R2, ["x^2 - y^2"]))
    with pytest.raises(ValueError, match="decomposition"):
        dimension_filtration(M)
    M = QuotientModule(R2, (Ideal(R2, ["x^2 - y^2"]),), {0: (Ideal(R2, ["x - y"]), Ideal(R2, ["x + y"]))})
    assert dimension_filtration(M).dims == (-1, 1)


@given(monomial_ideals())
def test_dimension_filtration_is_maximal(I):
    from sgcm.exactalg import ideal_colon

    M = QuotientModule.cyclic(I)
    D = dimension_filtration(M)
    assert check_dimension_condition(D)
    for a, b in zip(D.chain, D.chain[1:]):
        assert a <= b
    ring = I.ring
    for i in range(D.t):
        J = D.chain[i].ideals[0]
        for deg in range(0, 4):
            for combo in itertools.combinations_with_replacement(range(ring.nvars), deg):
                u = ring.monomial(tuple(combo.count(v) for v in range(ring.nvars)))
                if J.contains(u):
                    continue
                bigger = ideal_colon(I, Ideal(ring, list(J.generators) + [u]))
                assert krull_dimension(bigger) > max(D.dims[i], 0)


def test_filtration_members_embed_in_dimension_filtration(ex56):
    # each member of a filtration with the dimension condition sits in the D_i of equal dimension
    D = ex56.D
    for N, d in zip(ex56.F.chain, ex56.F.dims):
        j = D.dims.index(d)
        assert N <= D.chain[j]
    M = QuotientModule.cyclic(Ideal(R3, ["x^2", "x*y", "x*z"]))
    D = dimension_filtration(M)
    F = Filtration(M, (M.submodule([Ideal(R3, ["x"])]), M.whole()))
    for N, d in zip(F.chain, F.dims):
        j = D.dims.index(d)
        assert N <= D.chain[j]


# -- lengths -----------------------------------------------------------------------


def test_subquotient_length_examples(ex56):
    D1 = ex56.D.chain[1]
    M1 = ex56.F.chain[1]
    assert subquotient_length(ex56.M, M1, D1) is INFINITE
    assert subquotient_length(ex56.M, D1, D1) == 0
    M = QuotientModule.cyclic(Ideal(R2, ["x^2", "y"]))
    assert subquotient_length(M, M.zero(), M.submodule([Ideal(R2, ["x", "y"])])) == 1
    with pytest.raises(ContainmentError):
        subquotient_length(ex56.M, D1, M1)


@given(st.lists(st.integers(1, 3), min_size=2, max_size=2), st.integers(0, 2))
def test_subquotient_of_finite_module_is_vector_space_length(exps, extra):
    I = Ideal(R2, [f"x^{exps[0]}", f"y^{exps[1]}"] + (["x*y"] if extra else []))
    M = QuotientModule.cyclic(I)
    assert subquotient_length(M, M.zero(), M.whole()) == vector_space_length(I)


def test_h0_length_examples(ex47):
    assert h0_length(ex47.M) == 0
    assert h0_length(QuotientModule.cyclic(Ideal(R2, ["x^2", "x*y"]))) == 1
    assert h0_length(QuotientModule.cyclic(Ideal(R4, ["x", "z"]))) == 0
    assert h0_length(QuotientModule(R2, (Ideal(R2, ["x^2", "x*y"]), Ideal(R2, ["x^2", "x*y"])))) == 2
