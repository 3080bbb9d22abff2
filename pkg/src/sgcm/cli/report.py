"""Analysis reports: deterministic JSON plus aligned text tables."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .. import __version__
from ..exactalg import INFINITE

SCHEMA_VERSION = 1

# exit codes
OK, NEGATIVE, UNDECIDED, INPUT_ERROR = 0, 1, 2, 3


def jsonable(value: Any) -> Any:
    """Convert library values into plain JSON data."""
    if value is INFINITE:
        return "infinite"
    if isinstance(value, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


@dataclass
class Check:
    """One named verification with its two sides."""

    name: str
    passed: Optional[bool]
    detail: Any = None

    def as_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": jsonable(self.detail)}


@dataclass
class AnalysisReport:
    command: List[str]
    session: str = ""
    module: str = ""
    seed: Optional[int] = None
    verdicts: Dict[str, Any] = field(default_factory=dict)
    tables: Dict[str, Any] = field(default_factory=dict)
    invariants: Dict[str, Any] = field(default_factory=dict)
    checks: List[Check] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    timing: Optional[Dict[str, float]] = None
    exit_code: int = OK

    def as_dict(self) -> Dict[str, Any]:
        out = {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "command": list(self.command),
            "session": self.session,
            "module": self.module,
            "seed": self.seed,
            "verdicts": jsonable(self.verdicts),
            "tables": jsonable(self.tables),
            "invariants": jsonable(self.invariants),
            "checks": [c.as_dict() for c in self.checks],
            "notes": list(self.notes),
            "exit_code": self.exit_code,
        }
        if self.timing is not None:
            out["timing"] = {k: round(v, 3) for k, v in self.timing.items()}
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"sgcm {' '.join(self.command)}"]
        if self.module:
            lines.append(f"module: {self.module}")
        for k in sorted(self.verdicts):
            lines.append(f"{k}: {_fmt(self.verdicts[k])}")
        for k in sorted(self.invariants):
            lines.append(f"{k}: {_fmt(self.invariants[k])}")
        for name in sorted(self.tables):
            lines.append("")
            lines.append(f"[{name}]")
            lines.extend(format_table(self.tables[name]))
        if self.checks:
            lines.append("")
            width = max(len(c.name) for c in self.checks)
            for c in self.checks:
                mark = {True: "PASS", False: "FAIL", None: "N/A "}[c.passed]
                lines.append(f"{mark}  {c.name.ljust(width)}  {_fmt(c.detail)}")
        for n in self.notes:
            lines.append(f"note: {n}")
        if self.timing:
            lines.append("timing: " + ", ".join(f"{k}={v:.3f}s" for k, v in sorted(self.timing.items())))
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    v = jsonable(v)
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, ensure_ascii=False)
    return str(v)


def format_table(table: Any) -> List[str]:
    """Aligned rendering of a mapping (grid key -> value) or a list of rows."""
    if isinstance(table, dict):
        rows = [[k if not isinstance(k, tuple) else ",".join(map(str, k)), _fmt(v)] for k, v in table.items()]
        header = ["key", "value"]
    elif isinstance(table, list) and table and isinstance(table[0], dict):
        header = sorted(table[0])
        rows = [[_fmt(r.get(h)) for h in header] for r in table]
    else:
        return [_fmt(table)]
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) for i in range(len(header))]
    out = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    out.append("  ".join("-" * w for w in widths))
    out.extend("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)
    return out


__all__ = [
    "AnalysisReport",
    "Check",
    "INPUT_ERROR",
    "NEGATIVE",
    "OK",
    "SCHEMA_VERSION",
    "UNDECIDED",
    "format_table",
    "jsonable",
]
