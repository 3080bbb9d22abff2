"""Command implementations; each returns an :class:`AnalysisReport`."""

from __future__ import annotations

import itertools
from typing import Callable, Dict, Optional, Tuple

from ..hilbsam import hs_coefficients, verify_hs_theorem
from ..modules import Filtration, dimension_filtration, h0_length
from ..parallel import pmap
from ..parameters import (
    I_F_M,
    ParameterSystem,
    iter_good_sops,
    is_dd_sequence,
    is_good_sop,
    is_sop,
    multiplicity_table,
    quotient_length,
)
from ..seqcm import (
    UNAVAILABLE,
    CohomologyUnavailable,
    NoWitnessFound,
    NotGcmFiltration,
    check_gcm_filtration,
    check_seq_cm,
    invariant_I_F,
    invariant_I_F_cohomological,
    is_seq_gcm,
)
from .report import NEGATIVE, OK, UNDECIDED, AnalysisReport, Check
from .session import SessionError, SessionFile


class Context:
    """Resolved objects for one command invocation."""

    def __init__(self, session: SessionFile, options):
        self.session = session
        self.options = options
        self.module_name, self.M = session.module(getattr(options, "module", None))
        self._D: Optional[Filtration] = None

    @property
    def D(self) -> Filtration:
        if self._D is None:
            self._D = dimension_filtration(self.M)
        return self._D

    def filtration(self) -> Tuple[str, Filtration]:
        name = getattr(self.options, "filtration", None)
        if name is None:
            return "D (dimension filtration)", self.D
        if name not in self.session.filtrations:
            raise SessionError(f"unknown filtration {name!r}", path=self.session.path)
        mod, _ = self.session.filtration_sources[name]
        if mod != self.module_name:
            raise SessionError(f"filtration {name!r} lives on module {mod!r}", path=self.session.path)
        return name, self.session.filtrations[name]

    def declared_sop(self) -> Optional[ParameterSystem]:
        name = getattr(self.options, "sop", None)
        if name is None:
            on = self.session.sops_on(self.module_name)
            return self.session.sops[on[0]][1] if len(on) == 1 else None
        if name not in self.session.sops:
            raise SessionError(f"unknown sop {name!r}", path=self.session.path)
        mod, x = self.session.sops[name]
        if mod != self.module_name:
            raise SessionError(f"sop {name!r} lives on module {mod!r}", path=self.session.path)
        return x

    def sop_for(self, F: Filtration, report: AnalysisReport) -> Optional[ParameterSystem]:
        """The declared sop, or a searched good sop (recorded in the report)."""
        x = self.declared_sop()
        if x is not None:
            report.tables["sop"] = [str(f) for f in x]
            return x
        seed, budget = self.options.seed, self.options.budget
        for s, sop in iter_good_sops(self.M, F, seed, budget):
            report.tables["sop"] = [str(f) for f in sop]
            report.notes.append(f"good sop found by search with seed {s}")
            return sop
        report.notes.append(f"no good sop found (budget {budget})")
        return None

    def new_report(self) -> AnalysisReport:
        return AnalysisReport(
            command=list(self.options.argv),
            session=self.session.path,
            module=self.module_name,
            seed=getattr(self.options, "seed", None),
        )


def _filtration_table(F: Filtration):
    return [
        {"i": i, "dim": d, "ideals": [str(J) for J in N.ideals]}
        for i, (N, d) in enumerate(zip(F.chain, F.dims))
    ]


# -- commands -----------------------------------------------------------------


def cmd_dimfilt(ctx: Context) -> AnalysisReport:
    rep = ctx.new_report()
    D = ctx.D
    rep.tables["dimension_filtration"] = _filtration_table(D)
    rep.invariants["dim M"] = ctx.M.dim
    rep.invariants["l(H^0(M))"] = h0_length(ctx.M)
    if D.t >= 1:
        v = check_gcm_filtration(ctx.M, D, ctx.options.seed, ctx.options.budget)
        rep.verdicts["D is gCM"] = v.is_gcm
        rep.verdicts["D is gCM (route)"] = v.route
    return rep


def cmd_good_sop(ctx: Context) -> AnalysisReport:
    rep = ctx.new_report()
    fname, F = ctx.filtration()
    rep.verdicts["filtration"] = fname
    x = ctx.declared_sop()
    if x is not None:
        rep.tables["sop"] = [str(f) for f in x]
        sop = is_sop(ctx.M, x)
        good = sop and is_good_sop(ctx.M, F, x)
        rep.verdicts["is_sop"] = sop
        rep.verdicts["is_good_sop"] = good
        rep.exit_code = OK if good else NEGATIVE
        return rep
    found = ctx.sop_for(F, rep)
    rep.verdicts["found"] = found is not None
    if found is None:
        rep.exit_code = UNDECIDED
    return rep


def cmd_dd_check(ctx: Context) -> AnalysisReport:
    rep = ctx.new_report()
    D = ctx.D
    x = ctx.sop_for(D, rep)
    if x is None:
        rep.exit_code = UNDECIDED
        return rep
    B = ctx.options.bound
    rep.verdicts["bound"] = B
    rep.verdicts["is_sop"] = is_sop(ctx.M, x)
    rep.verdicts["is_good_sop (D)"] = rep.verdicts["is_sop"] and is_good_sop(ctx.M, D, x)
    dd = is_dd_sequence(ctx.M, list(x), B)
    rep.verdicts["is_dd_sequence"] = dd
    rep.exit_code = OK if dd else NEGATIVE
    return rep


def _grid_value(args):
    M, F, x, n, table = args
    return quotient_length(M, x, n), I_F_M(M, F, x, n, table)


def cmd_ifm(ctx: Context) -> AnalysisReport:
    rep = ctx.new_report()
    fname, F = ctx.filtration()
    rep.verdicts["filtration"] = fname
    x = ctx.sop_for(F, rep)
    if x is None:
        rep.exit_code = UNDECIDED
        return rep
    if not (is_sop(ctx.M, x) and is_good_sop(ctx.M, F, x)):
        raise SessionError("the sop is not a good system of parameters for this filtration", path=ctx.session.path)
    table = multiplicity_table(ctx.M, F, x)
    grid = list(itertools.product(range(1, ctx.options.grid + 1), repeat=len(x)))
    values = pmap(_grid_value, [(ctx.M, F, x, n, table) for n in grid])
    rep.tables["multiplicities"] = [{"i": i, "d_i": d, "e": e} for i, (d, e) in enumerate(zip(table.dims, table.as_list()))]
    rep.tables["l(M/x(n)M)"] = {n: v[0] for n, v in zip(grid, values)}
    rep.tables["I_F,M(x(n))"] = {n: v[1] for n, v in zip(grid, values)}
    distinct = sorted({v[1] for v in values})
    rep.verdicts["constant"] = len(distinct) == 1
    rep.invariants["I_F,M values"] = distinct
    return rep


def cmd_invariant(ctx: Context) -> AnalysisReport:
    rep = ctx.new_report()
    fname, F = ctx.filtration()
    rep.verdicts["filtration"] = fname
    rep.notes.append("c_ij uses d_0 = max(dim M_0, 0) and binom(a, b) = 0 unless 0 <= b <= a")
    try:
        coh = invariant_I_F_cohomological(ctx.M, F)
    except CohomologyUnavailable:
        coh = UNAVAILABLE
    except NotGcmFiltration as exc:
        coh = None
        rep.notes.append(f"cohomological route: filtration is not gCM ({exc})")
    rep.invariants["I_F(M) cohomological"] = coh
    try:
        par = invariant_I_F(ctx.M, F, ctx.options.seed, ctx.options.budget, sop=ctx.declared_sop())
    except NoWitnessFound as exc:
        par = None
        rep.notes.append(str(exc))
    rep.invariants["I_F(M) parametric"] = par
    if par is not None and isinstance(coh, int):
        rep.verdicts["agreement"] = par == coh
        rep.exit_code = OK if par == coh else NEGATIVE
    elif par is None and coh is None:
        rep.exit_code = NEGATIVE
    elif par is None:
        rep.exit_code = UNDECIDED
    return rep


def cmd_seq_gcm(ctx: Context) -> AnalysisReport:
    rep = ctx.new_report()
    v = is_seq_gcm(ctx.M, ctx.options.seed, ctx.options.budget)
    rep.verdicts["is_seq_gcm"] = v.is_seq_gcm
    rep.verdicts["status"] = v.status
    rep.verdicts["agreement"] = "n/a" if v.agreement is None else v.agreement
    rep.invariants["I_D(M) parametric"] = v.invariant_parametric
    rep.invariants["I_D(M) cohomological"] = v.invariant_cohomological
    if v.witness_filtration is not None:
        rep.tables["witness_filtration"] = _filtration_table(v.witness_filtration)
    if v.witness_sop is not None:
        rep.tables["witness_sop"] = [str(f) for f in v.witness_sop]
        rep.verdicts["witness_power"] = v.witness_power
    if v.message:
        rep.notes.append(v.message)
    rep.exit_code = {True: OK, False: NEGATIVE, None: UNDECIDED}[v.is_seq_gcm]
    if ctx.options.filtration is not None:
        fname, F = ctx.filtration()
        fv = check_gcm_filtration(ctx.M, F, ctx.options.seed, ctx.options.budget)
        rep.verdicts[f"{fname} is gCM"] = fv.is_gcm
        rep.verdicts[f"{fname} is gCM (reason)"] = fv.reason
    return rep


def cmd_seq_cm(ctx: Context) -> AnalysisReport:
    rep = ctx.new_report()
    v = check_seq_cm(ctx.M, ctx.options.seed, ctx.options.budget)
    rep.verdicts["is_seq_cm"] = v.is_seq_cm
    rep.verdicts["vanishing (cohomological)"] = v.vanishing_cohomological
    rep.verdicts["agreement"] = "n/a" if v.agreement is None else v.agreement
    rep.invariants["I_D(M) parametric"] = v.invariant_parametric
    if v.message:
        rep.notes.append(v.message)
    rep.exit_code = {True: OK, False: NEGATIVE, None: UNDECIDED}[v.is_seq_cm]
    return rep


def cmd_hilbert_samuel(ctx: Context) -> AnalysisReport:
    rep = ctx.new_report()
    D = ctx.D
    x = ctx.sop_for(D, rep)
    if x is None:
        rep.exit_code = UNDECIDED
        return rep
    B = ctx.options.bound
    dd = is_dd_sequence(ctx.M, list(x), B)
    rep.verdicts["is_dd_sequence"] = dd
    rep.verdicts["bound"] = B
    if not dd:
        rep.notes.append("the sop is not a dd-sequence; the coefficient formulas do not apply")
        rep.exit_code = NEGATIVE
        return rep
    upto = max(ctx.options.grid, len(x) + 3)
    rec = hs_coefficients(ctx.M, x, upto)
    rep.tables["l(M/q^(n+1)M)"] = rec.values
    rep.invariants["e_0..e_d"] = rec.coefficients
    rep.verdicts["fit_exact"] = rec.fit_exact
    if rec.failed_at is not None:
        rep.notes.append(f"fit fails at n = {rec.failed_at}")
    ver = verify_hs_theorem(ctx.M, D, x, rec)
    for c in ver.checks:
        rep.checks.append(Check(c.name, c.passed, {"lhs": c.lhs, "rhs": c.rhs}))
    ok = rec.fit_exact and all(c.passed is not False for c in ver.checks)
    rep.exit_code = OK if ok else NEGATIVE
    return rep


COMMANDS: Dict[str, Callable[[Context], AnalysisReport]] = {
    "dimfilt": cmd_dimfilt,
    "good-sop": cmd_good_sop,
    "dd-check": cmd_dd_check,
    "ifm": cmd_ifm,
    "invariant": cmd_invariant,
    "seq-gcm": cmd_seq_gcm,
    "seq-cm": cmd_seq_cm,
    "hilbert-samuel": cmd_hilbert_samuel,
}


__all__ = ["COMMANDS", "Context"]
