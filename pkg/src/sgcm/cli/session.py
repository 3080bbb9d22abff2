"""Plain-text session files: one declaration per line.

::

    ring Q[X1,X2,X3]            # or: ring Fp(101)[x,y]
    ideal I = X1*X2, X2*X3      # generators; a lone 0 is the zero ideal
    ideal K = intersect(I, J)   # also: sum(I, J), colon(I, J), sat(I)
    decomp K = [P1, P2]         # primary decomposition used by dimfilt
    module M = quot(I) (+) quot(J)
    filtration F on M = [[0, 0], [I2, R], [R, R]]
    sop x on M = X1+X3, X2

``#`` starts a comment.  Names must be defined before they are used.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..exactalg import (
    FieldSpec,
    Ideal,
    PolyRing,
    PolynomialSyntaxError,
    QQ,
    ideal_colon,
    ideal_intersection,
    ideal_sum,
    irrelevant_ideal,
    parse_polynomial,
    saturation,
)
from ..modules import ContainmentError, Filtration, QuotientModule, check_dimension_condition, unit_ideal
from ..parameters import ParameterSystem

NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_RING = re.compile(r"ring\s+(Q|Fp\((\d+)\))\s*\[(.*)\]\s*$")
_IDEAL = re.compile(rf"ideal\s+({NAME})\s*=\s*(.*)$")
_DECOMP = re.compile(rf"decomp\s+({NAME})\s*=\s*\[(.*)\]\s*$")
_MODULE = re.compile(rf"module\s+({NAME})\s*=\s*(.*)$")
_FILT = re.compile(rf"filtration\s+({NAME})\s+on\s+({NAME})\s*=\s*(.*)$")
_SOP = re.compile(rf"sop\s+({NAME})\s+on\s+({NAME})\s*=\s*(.*)$")
_OPS = {"intersect": 2, "sum": 2, "colon": 2, "sat": 1}
_OPCALL = re.compile(rf"({'|'.join(_OPS)})\s*\((.*)\)\s*$")


class SessionError(ValueError):
    """Syntax or semantic error, anchored at a line (and column when known)."""

    def __init__(self, message: str, line: int = 0, column: Optional[int] = None, path: str = "<session>"):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        where = f"{path}:{line}" + (f":{column}" if column is not None else "")
        super().__init__(f"{where}: {message}")


@dataclass
class SessionFile:
    """Validated contents of a session file together with their source text."""

    ring: PolyRing
    ideals: Dict[str, Ideal] = field(default_factory=dict)
    ideal_sources: Dict[str, str] = field(default_factory=dict)
    decomps: Dict[str, List[str]] = field(default_factory=dict)
    modules: Dict[str, QuotientModule] = field(default_factory=dict)
    module_sources: Dict[str, List[str]] = field(default_factory=dict)
    filtrations: Dict[str, Filtration] = field(default_factory=dict)
    filtration_sources: Dict[str, Tuple[str, List[List[str]]]] = field(default_factory=dict)
    sops: Dict[str, Tuple[str, ParameterSystem]] = field(default_factory=dict)
    path: str = "<session>"

    # -- lookups ----------------------------------------------------------

    def module(self, name: Optional[str] = None) -> Tuple[str, QuotientModule]:
        if name is None:
            if not self.modules:
                raise SessionError("session declares no module", path=self.path)
            name = next(iter(self.modules))
        if name not in self.modules:
            raise SessionError(f"unknown module {name!r}", path=self.path)
        return name, self.modules[name]

    def filtrations_on(self, module_name: str) -> List[str]:
        return [f for f, (m, _) in self.filtration_sources.items() if m == module_name]

    def sops_on(self, module_name: str) -> List[str]:
        return [s for s, (m, _) in self.sops.items() if m == module_name]

    # -- serialization ----------------------------------------------------

    def dumps(self) -> str:
        """Canonical text: ideals written out as generator lists."""
        field_txt = "Q" if self.ring.field == QQ else f"Fp({self.ring.field.p})"
        lines = [f"ring {field_txt}[{','.join(self.ring.variables)}]"]
        for name, I in self.ideals.items():
            gens = ", ".join(str(g) for g in I.generators) or "0"
            lines.append(f"ideal {name} = {gens}")
        for name, parts in self.decomps.items():
            lines.append(f"decomp {name} = [{', '.join(parts)}]")
        for name, comps in self.module_sources.items():
            lines.append(f"module {name} = " + " (+) ".join(f"quot({c})" for c in comps))
        for name, (mod, chain) in self.filtration_sources.items():
            body = ", ".join("[" + ", ".join(row) + "]" for row in chain)
            lines.append(f"filtration {name} on {mod} = [{body}]")
        for name, (mod, x) in self.sops.items():
            lines.append(f"sop {name} on {mod} = " + ", ".join(str(f) for f in x))
        return "\n".join(lines) + "\n"


def _split_top(text: str) -> List[str]:
    """Split on commas that are not nested inside brackets or parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or parts:
        parts.append(tail)
    return parts


class _Loader:
    def __init__(self, path: str):
        self.path = path
        self.session: Optional[SessionFile] = None
        self.lineno = 0
        self.decomp_lines: Dict[str, int] = {}

    def fail(self, msg, column=None):
        raise SessionError(msg, self.lineno, column, self.path)

    @property
    def ring(self) -> PolyRing:
        if self.session is None:
            self.fail("the first declaration must be 'ring'")
        return self.session.ring

    def ideal_ref(self, name: str) -> Ideal:
        name = name.strip()
        if name not in self.session.ideals:
            self.fail(f"unknown ideal {name!r}")
        return self.session.ideals[name]

    def polys(self, text: str, offset: int):
        out = []
        pos = offset
        for chunk in text.split(","):
            s = chunk.strip()
            if not s:
                self.fail("empty polynomial", pos + 1)
            try:
                out.append(parse_polynomial(s, self.ring))
            except PolynomialSyntaxError as exc:
                self.fail(str(exc).split(" at column")[0], pos + chunk.index(s) + exc.column + 1)
            except ValueError as exc:
                self.fail(str(exc), pos + 1)
            pos += len(chunk) + 1
        return out

    # -- declarations -------------------------------------------------------

    def do_ring(self, m):
        if self.session is not None:
            self.fail("ring declared twice")
        names = [v.strip() for v in m.group(3).split(",")]
        if not names or any(not re.fullmatch(NAME, v) for v in names):
            self.fail("ring variables must be identifiers")
        fld = QQ if m.group(1) == "Q" else None
        if fld is None:
            try:
                fld = FieldSpec.prime(int(m.group(2)))
            except ValueError as exc:
                self.fail(str(exc))
        try:
            ring = PolyRing(tuple(names), fld)
        except ValueError as exc:
            self.fail(str(exc))
        self.session = SessionFile(ring, path=self.path)

    def do_ideal(self, m, line):
        name, body = m.group(1), m.group(2).strip()
        if name in self.session.ideals:
            self.fail(f"ideal {name!r} declared twice")
        op = _OPCALL.match(body)
        if op:
            args = _split_top(op.group(2))
            if len(args) != _OPS[op.group(1)]:
                self.fail(f"{op.group(1)} takes {_OPS[op.group(1)]} argument(s)")
            refs = [self.ideal_ref(a) for a in args]
            kind = op.group(1)
            try:
                if kind == "intersect":
                    I = ideal_intersection(*refs)
                elif kind == "sum":
                    I = ideal_sum(*refs)
                elif kind == "colon":
                    I = ideal_colon(*refs)
                else:
                    I = saturation(refs[0], irrelevant_ideal(self.ring))
            except ValueError as exc:
                self.fail(f"ideal {name!r}: {exc}")
        elif body == "0":
            I = Ideal(self.ring, [])
        else:
            I = Ideal(self.ring, self.polys(body, line.index(body)))
        self.session.ideals[name] = I
        self.session.ideal_sources[name] = body

    def do_decomp(self, m):
        name = m.group(1)
        target = self.ideal_ref(name)
        if any(name in comps for comps in self.session.module_sources.values()):
            self.fail(f"decomp {name!r} must precede every module that uses it")
        parts = [p.strip() for p in _split_top(m.group(2))]
        if not parts:
            self.fail("empty decomposition")
        pieces = [self.ideal_ref(p) for p in parts]
        inter = pieces[0]
        for q in pieces[1:]:
            inter = ideal_intersection(inter, q)
        if inter != target:
            self.fail(f"decomposition of {name!r} does not intersect back to it")
        self.session.decomps[name] = parts
        self.decomp_lines[name] = self.lineno

    def do_module(self, m):
        name, body = m.group(1), m.group(2)
        if name in self.session.modules:
            self.fail(f"module {name!r} declared twice")
        comps = []
        for chunk in body.split("(+)"):
            mm = re.fullmatch(rf"\s*quot\s*\(\s*({NAME})\s*\)\s*", chunk)
            if not mm:
                self.fail(f"expected quot(NAME), got {chunk.strip()!r}")
            comps.append(mm.group(1))
        ideals = [self.ideal_ref(c) for c in comps]
        decomps = {
            k: tuple(self.session.ideals[p] for p in self.session.decomps[c])
            for k, c in enumerate(comps)
            if c in self.session.decomps
        }
        try:
            M = QuotientModule(self.ring, tuple(ideals), decomps)
        except ValueError as exc:
            self.fail(f"module {name!r}: {exc}")
        self.session.modules[name] = M
        self.session.module_sources[name] = comps

    def do_filtration(self, m):
        name, mod, body = m.group(1), m.group(2), m.group(3).strip()
        if name in self.session.filtrations:
            self.fail(f"filtration {name!r} declared twice")
        if mod not in self.session.modules:
            self.fail(f"unknown module {mod!r}")
        M = self.session.modules[mod]
        if not (body.startswith("[") and body.endswith("]")):
            self.fail("filtration body must be a bracketed list of lists")
        rows_txt = _split_top(body[1:-1])
        chain, rows = [], []
        for r in rows_txt:
            if not (r.startswith("[") and r.endswith("]")):
                self.fail(f"filtration member {r!r} must be bracketed")
            row = [e.strip() for e in _split_top(r[1:-1])]
            if len(row) != len(M.components):
                self.fail(f"filtration {name!r}: expected {len(M.components)} entries per member")
            ideals = []
            for k, e in enumerate(row):
                if e == "R":
                    ideals.append(unit_ideal(self.ring))
                elif e == "0":
                    ideals.append(M.components[k])
                else:
                    ideals.append(self.ideal_ref(e))
            rows.append(row)
            chain.append(ideals)
        try:
            F = Filtration(M, tuple(M.submodule(c) for c in chain))
        except (ContainmentError, ValueError) as exc:
            self.fail(f"filtration {name!r}: {exc}")
        if not check_dimension_condition(F):
            self.fail(f"filtration {name!r} violates the dimension condition (dims {list(F.dims)})")
        self.session.filtrations[name] = F
        self.session.filtration_sources[name] = (mod, rows)

    def do_sop(self, m, line):
        name, mod, body = m.group(1), m.group(2), m.group(3)
        if name in self.session.sops:
            self.fail(f"sop {name!r} declared twice")
        if mod not in self.session.modules:
            self.fail(f"unknown module {mod!r}")
        polys = self.polys(body, line.index(body))
        try:
            x = ParameterSystem(tuple(polys), name=name)
        except ValueError as exc:
            self.fail(f"sop {name!r}: {exc}")
        if len(x) != self.session.modules[mod].dim:
            self.fail(f"sop {name!r} has {len(x)} elements but dim {mod} = {self.session.modules[mod].dim}")
        self.session.sops[name] = (mod, x)

    def load(self, text: str) -> SessionFile:
        for self.lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            stripped = line.strip()
            keyword = stripped.split(None, 1)[0]
            if keyword == "ring":
                m = _RING.match(stripped)
                if not m:
                    self.fail("expected 'ring Q[vars]' or 'ring Fp(p)[vars]'", 1)
                self.do_ring(m)
                continue
            self.ring  # the ring must come first
            if keyword == "ideal" and (m := _IDEAL.match(stripped)):
                self.do_ideal(m, stripped)
            elif keyword == "decomp" and (m := _DECOMP.match(stripped)):
                self.do_decomp(m)
            elif keyword == "module" and (m := _MODULE.match(stripped)):
                self.do_module(m)
            elif keyword == "filtration" and (m := _FILT.match(stripped)):
                self.do_filtration(m)
            elif keyword == "sop" and (m := _SOP.match(stripped)):
                self.do_sop(m, stripped)
            else:
                self.fail(f"cannot parse declaration starting with {keyword!r}", 1)
        if self.session is None:
            self.lineno = 0
            self.fail("empty session file")
        return self.session


def loads(text: str, path: str = "<session>") -> SessionFile:
    return _Loader(path).load(text)


def parse_session(path) -> SessionFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise SessionError(f"cannot read session file: {exc.strerror}", path=str(path)) from exc
    return loads(text, str(path))


def sessions_equal(a: SessionFile, b: SessionFile) -> bool:
    """Structural equality of the validated objects (used for round-trip checks)."""
    if a.ring != b.ring or list(a.ideals) != list(b.ideals):
        return False
    if any(a.ideals[k] != b.ideals[k] for k in a.ideals):
        return False
    if a.decomps != b.decomps or a.module_sources != b.module_sources:
        return False
    if any(a.modules[k] != b.modules[k] for k in a.modules):
        return False
    if a.filtration_sources.keys() != b.filtration_sources.keys():
        return False
    for k in a.filtrations:
        if [N.ideals for N in a.filtrations[k].chain] != [N.ideals for N in b.filtrations[k].chain]:
            return False
    if a.sops.keys() != b.sops.keys():
        return False
    return all(
        a.sops[k][0] == b.sops[k][0] and [f.terms for f in a.sops[k][1]] == [f.terms for f in b.sops[k][1]]
        for k in a.sops
    )


__all__ = ["SessionError", "SessionFile", "loads", "parse_session", "sessions_equal"]
