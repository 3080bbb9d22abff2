import pytest
from hypothesis import given, strategies as st

from oracles import grid, is_monotone, lemma_2_5_holds, multilinear_fit
from sgcm.cli.generate import random_corpus
from sgcm.exactalg import Ideal, PolyRing
from sgcm.modules import Filtration, QuotientModule, dimension_filtration
from sgcm.parameters import (
    I_F_M,
    I_F_M_grid,
    NotParametersError,
    ParameterSystem,
    degree_plan,
    find_good_sop,
    forms_of_degree,
    is_d_sequence,
    is_dd_sequence,
    is_good_sop,
    is_sop,
    iter_good_sops,
    multiplicity,
    multiplicity_table,
    quotient_length,
)

Rx = PolyRing(("x",))
R2 = PolyRing(("x", "y"))
R3 = PolyRing(("x", "y", "z"))


def swapped(ex47):
    x = ex47.x
    return ParameterSystem((x[2], x[1], x[0]))


# -- ParameterSystem ---------------------------------------------------------------


def test_parameter_system_validation():
    with pytest.raises(ValueError):
        ParameterSystem((Rx("1"),))
    with pytest.raises(ValueError):
        ParameterSystem((Rx("x"),), exponents=(0,))
    x = ParameterSystem((R2("x"), R2("y")), exponents=(2, 3))
    assert x.powered() == [R2("x^2"), R2("y^3")]
    assert x.power((1, 2)).elements == (R2("x"), R2("y^2"))


# -- lengths and sops ------------------------------------------------------------------


@pytest.mark.parametrize("n", [(1, 1, 1), (2, 1, 3), (3, 2, 1)])
def test_quotient_length_example_4_7(ex47, n):
    assert quotient_length(ex47.M, ex47.x, n) == 2 * n[0] * n[1] * n[2] + n[0] * n[1] + 1


@pytest.mark.parametrize("n", grid(3, 2))
def test_quotient_length_example_5_6(ex56, n):
    l, m, k = n
    assert quotient_length(ex56.M, ex56.x, n) == l * m * k + l * m


def test_quotient_length_trivial_and_error():
    M = QuotientModule.cyclic(Ideal(Rx, []))
    assert quotient_length(M, ParameterSystem((Rx("x"),)), (5,)) == 5
    N = QuotientModule.cyclic(Ideal(R2, []))
    with pytest.raises(NotParametersError):
        quotient_length(N, ParameterSystem((R2("x"), R2("x"))))


def test_is_sop_examples(ex47):
    assert is_sop(ex47.M, ex47.x)
    R = QuotientModule.cyclic(Ideal(R2, []))
    assert not is_sop(R, ParameterSystem((R2("x"), R2("x"))))
    assert is_sop(R, ParameterSystem((R2("x"), R2("y"))))
    assert not is_sop(R, ParameterSystem((R2("x"),)))


def test_is_good_sop_examples(ex47, ex56):
    assert is_good_sop(ex47.M, ex47.D, ex47.x)
    assert is_good_sop(ex56.M, ex56.F, ex56.x)
    assert is_good_sop(ex47.M, Filtration.trivial(ex47.M), swapped(ex47))
    assert not is_good_sop(ex47.M, ex47.D, swapped(ex47))


# -- d- and dd-sequences -----------------------------------------------------------


def test_d_sequence_examples(ex47):
    R = QuotientModule.cyclic(Ideal(R3, []))
    assert is_d_sequence(R, list(R3.gens()))
    assert is_d_sequence(ex47.M, list(ex47.x))
    assert not is_d_sequence(QuotientModule.cyclic(Ideal(Rx, [])), [Rx("x^2"), Rx("x")])


def test_dd_sequence_examples(ex47, ex56):
    assert is_dd_sequence(ex47.M, list(ex47.x), 2)
    assert is_dd_sequence(ex56.M, list(ex56.x), 2)
    assert not is_dd_sequence(ex47.M, list(swapped(ex47)), 2)


def test_dd_sequence_on_quotient_by_d1(ex47):
    Q = QuotientModule.cyclic(ex47.I)
    assert is_dd_sequence(Q, list(ex47.x), 2)


# -- multiplicities and I_{F,M} ----------------------------------------------------------


def test_multiplicity_examples(ex47):
    assert multiplicity(ex47.M, ex47.M.whole(), ex47.x) == 2
    assert multiplicity(ex47.M, ex47.D.chain[1], ex47.x) == 1
    M = QuotientModule.cyclic(Ideal(Rx, []))
    assert multiplicity(M, M.whole(), ParameterSystem((Rx("x"),))) == 1


def test_multiplicity_table_conventions(ex47):
    table = multiplicity_table(ex47.M, ex47.D, ex47.x)
    assert table.as_list() == [0, 1, 2]
    M = QuotientModule.cyclic(Ideal(R2, ["x^2", "x*y"]))
    D = dimension_filtration(M)
    t = multiplicity_table(M, D, ParameterSystem((R2("y"),)))
    # e(...; M_0) is the length of M_0 when dim M_0 = 0
    assert t.as_list() == [1, 1]


def test_I_F_M_examples(ex47, ex56):
    assert set(I_F_M_grid(ex47.M, ex47.D, ex47.x, 2).values()) == {1}
    assert set(I_F_M_grid(ex56.M, ex56.F, ex56.x, 2).values()) == {0}
    CM = QuotientModule.cyclic(Ideal(R3, ["x"]))
    y = ParameterSystem((R3("y"), R3("z")))
    assert set(I_F_M_grid(CM, Filtration.trivial(CM), y, 3).values()) == {0}


# -- search ------------------------------------------------------------------------------


def test_find_good_sop_example_4_7(ex47):
    res = find_good_sop(ex47.M, ex47.D, seed=0)
    assert res.found
    assert is_sop(ex47.M, res.sop) and is_good_sop(ex47.M, ex47.D, res.sop)
    again = find_good_sop(ex47.M, ex47.D, seed=0)
    assert again.sop == res.sop


def test_find_good_sop_on_polynomial_ring():
    M = QuotientModule.cyclic(Ideal(R3, []))
    res = find_good_sop(M, Filtration.trivial(M), seed=3)
    assert res.found and all(f.degree() == 1 for f in res.sop)


def test_find_good_sop_reports_failure_without_linear_forms():
    M = QuotientModule.cyclic(Ideal(R3, ["x^2*y^2", "x^2*z^2"]))
    D = dimension_filtration(M)
    assert D.dims == (-1, 1, 2)
    res = find_good_sop(M, D, seed=0, max_tries=1)
    assert not res.found
    assert "no forms" in res.message
    # escalating the degree recovers a good sop
    assert degree_plan(M, D)[0] is None
    seed, sop = next(iter_good_sops(M, D, seed=0, budget=5))
    assert is_good_sop(M, D, sop)


def test_forms_of_degree_spans_graded_piece():
    A = Ideal(R2, ["x^2", "y^3"])
    assert forms_of_degree(A, 1) == []
    assert {str(f) for f in forms_of_degree(A, 2)} == {"x^2"}
    assert {str(f) for f in forms_of_degree(A, 3)} == {"x^3", "x^2*y", "y^3"}
    assert forms_of_degree(Ideal(R2, [1]), 1) == list(R2.gens())


# -- properties on a seeded corpus ------------------------------------------------------


def _corpus_with_sops(seed, count):
    out = []
    for I in random_corpus(seed, count):
        M = QuotientModule.cyclic(I)
        if M.dim < 1:
            continue
        D = dimension_filtration(M)
        sops = [s for _, s in zip(range(2), (sop for _, sop in iter_good_sops(M, D, seed=0, budget=6)))]
        out.append((M, D, sops))
    return out


CORPUS = _corpus_with_sops(5, 16)


@pytest.mark.parametrize("case", range(len(CORPUS)))
def test_positivity_and_monotonicity(case):
    M, D, sops = CORPUS[case]
    for x in sops:
        table = I_F_M_grid(M, D, x, 3 if len(x) <= 2 else 2)
        assert min(table.values()) >= 0
        assert is_monotone(table)


@pytest.mark.parametrize("case", range(len(CORPUS)))
def test_dd_implies_good_and_multilinear_fit(case):
    M, D, sops = CORPUS[case]
    for x in sops:
        if not is_dd_sequence(M, list(x), 2):
            continue
        assert is_good_sop(M, D, x)
        d = len(x)
        values = {n: quotient_length(M, x, n) for n in grid(d, 3)}
        coeffs, exact = multilinear_fit(values, d)
        assert exact
        assert coeffs[d] == multiplicity(M, M.whole(), x)
        assert lemma_2_5_holds(M, D, x)


def test_multilinear_fit_fails_for_a_non_dd_sop(ex47):
    x = swapped(ex47)
    values = {n: quotient_length(ex47.M, x, n) for n in grid(3, 2)}
    _, exact = multilinear_fit(values, 3)
    assert not exact


@given(st.integers(1, 3), st.integers(1, 3))
def test_regular_sequence_quotient_lengths(a, b):
    M = QuotientModule.cyclic(Ideal(R2, []))
    x = ParameterSystem((R2("x+y"), R2("x-y")))
    assert quotient_length(M, x, (a, b)) == a * b
    assert I_F_M(M, Filtration.trivial(M), x, (a, b)) == 0
