"""Packaged worked examples and their verification scripts."""

from __future__ import annotations

import itertools
from importlib import resources
from typing import Callable, Dict, List

from ..exactalg import INFINITE
from ..hilbsam import hs_coefficients, verify_hs_theorem
from ..modules import QuotientModule, dimension_filtration
from ..parameters import I_F_M_grid, is_dd_sequence, is_good_sop, is_sop, quotient_length
from ..seqcm import (
    buchsbaum_invariant,
    check_gcm_filtration,
    check_prop48_equality,
    invariant_I_F,
    invariant_I_F_cohomological,
    is_seq_gcm,
    module_cohomology_length,
)
from .report import Check
from .session import SessionFile, loads

CORPUS = {"4.7": "example_4_7.sgcm", "5.5": "example_5_5.sgcm", "5.6": "example_5_6.sgcm"}


def corpus_text(name: str) -> str:
    return resources.files("sgcm.cli").joinpath("corpus", name).read_text(encoding="utf-8")


def load_example(example_id: str) -> SessionFile:
    if example_id not in CORPUS:
        raise KeyError(f"unknown example {example_id!r}; choose from {', '.join(sorted(CORPUS))}")
    return loads(corpus_text(CORPUS[example_id]), f"corpus/{CORPUS[example_id]}")


def _grid(d: int, bound: int = 3):
    return list(itertools.product(range(1, bound + 1), repeat=d))


def _same_chain(F, G) -> bool:
    return len(F.chain) == len(G.chain) and all(a.ideals == b.ideals for a, b in zip(F.chain, G.chain))


def verify_4_7(s: SessionFile) -> List[Check]:
    M, D = s.modules["M"], s.filtrations["D"]
    x = s.sops["x"][1]
    out = []
    bad = [n for n in _grid(3) if quotient_length(M, x, n) != 2 * n[0] * n[1] * n[2] + n[0] * n[1] + 1]
    out.append(Check("l(M/x(n)M) = 2n1n2n3 + n1n2 + 1 on {1,2,3}^3", not bad, {"mismatches": bad}))
    Q = QuotientModule.cyclic(s.ideals["I"])
    bad = [n for n in _grid(3) if quotient_length(Q, x, n) != 2 * n[0] * n[1] * n[2] + 2]
    out.append(Check("l(N/x(n)N) = 2n1n2n3 + 2 for N = M/D_1", not bad, {"mismatches": bad}))
    iq = buchsbaum_invariant(Q.components)
    h1 = module_cohomology_length(Q.components, 1)
    out.append(Check("I(M/D_1) = 2 = 2 l(H^1(M/D_1))", iq == 2 and 2 * h1 == 2, {"I": iq, "l(H^1)": h1}))
    out.append(Check("D equals the computed dimension filtration", _same_chain(dimension_filtration(M), D), list(D.dims)))
    par = invariant_I_F(M, D, sop=x)
    coh = invariant_I_F_cohomological(M, D)
    out.append(Check("I_D(M) = 1 by both routes", par == coh == 1, {"parametric": par, "cohomological": coh}))
    grid = I_F_M_grid(M, D, x, 3)
    out.append(Check("I_D,M(x(n)) = 1 on {1,2,3}^3", set(grid.values()) == {1}, sorted(set(grid.values()))))
    p48 = check_prop48_equality(M, D, lhs=coh)
    out.append(Check("I_D(M) = 1 < 0 + 2 = sum of I(D_{i+1}/D_i)", p48.lhs == 1 and p48.terms == [0, 2] and p48.equal is False,
                     {"lhs": p48.lhs, "terms": p48.terms}))
    rec = hs_coefficients(M, x, 6)
    out.append(Check("Hilbert-Samuel coefficients (2,2,0,0), exact for n <= 6", rec.coefficients == [2, 2, 0, 0] and rec.fit_exact,
                     {"coefficients": rec.coefficients}))
    ver = verify_hs_theorem(M, D, x, rec)
    out.append(Check("coefficient identities", all(c.passed for c in ver.checks),
                     {c.name: [c.lhs, c.rhs] for c in ver.checks}))
    return out


def verify_5_6(s: SessionFile) -> List[Check]:
    M, F = s.modules["M"], s.filtrations["F"]
    x = s.sops["x"][1]
    out = []
    bad = [n for n in _grid(3) if quotient_length(M, x, n) != n[0] * n[1] * n[2] + n[0] * n[1]]
    out.append(Check("l(M/(w^l,(x+y)^m,z^n)M) = lmn + lm on {1,2,3}^3", not bad, {"mismatches": bad}))
    out.append(Check("(w, x+y, z) is a good sop for F", is_sop(M, x) and is_good_sop(M, F, x)))
    grid = I_F_M_grid(M, F, x, 3)
    out.append(Check("I_F,M = 0 on {1,2,3}^3", set(grid.values()) == {0}, sorted(set(grid.values()))))
    v = check_gcm_filtration(M, F)
    h1 = module_cohomology_length(F.chain[1].ideals, 1)
    out.append(Check("F is not a gCM filtration (l(H^1(M/M_1)) infinite)", v.is_gcm is False and h1 is INFINITE,
                     {"reason": v.reason}))
    seq = is_seq_gcm(M)
    out.append(Check("M is sequentially gCM with I_D(M) = 0", seq.is_seq_gcm is True and seq.invariant_parametric == 0,
                     {"status": seq.status, "I_D": seq.invariant_parametric, "cohomological": seq.invariant_cohomological}))
    return out


def verify_5_5(s: SessionFile) -> List[Check]:
    M, D = s.modules["M"], s.filtrations["D"]
    x = s.sops["x"][1]
    out = [Check("D equals the computed dimension filtration", _same_chain(dimension_filtration(M), D), list(D.dims))]
    out.append(Check("x is a good sop with x_2, x_3 in (y,z,t,w)", is_sop(M, x) and is_good_sop(M, D, x)))
    for B in (2, 3):
        out.append(Check(f"x is a dd-sequence (exponents <= {B})", is_dd_sequence(M, list(x), B)))
    v = check_gcm_filtration(M, D)
    out.append(Check("D is not a gCM filtration", v.is_gcm is False, {"reason": v.reason}))
    return out


VERIFIERS: Dict[str, Callable[[SessionFile], List[Check]]] = {
    "4.7": verify_4_7,
    "5.5": verify_5_5,
    "5.6": verify_5_6,
}


def verify_example(example_id: str) -> List[Check]:
    return VERIFIERS[example_id](load_example(example_id))


__all__ = ["CORPUS", "VERIFIERS", "corpus_text", "load_example", "verify_example"]
