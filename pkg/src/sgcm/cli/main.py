"""Command-line entry point: ``sgcm <command> <session-file> [options]``.

Exit codes: 0 affirmative, 1 mathematical negative, 2 undecided
(search budget exhausted), 3 input error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

from ..modules import ContainmentError
from .commands import COMMANDS, Context
from .examples import CORPUS, verify_example
from .report import INPUT_ERROR, NEGATIVE, OK, AnalysisReport
from .session import SessionError, parse_session


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="first seed of the randomized search (default 0)")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    p.add_argument("--out", metavar="REPORT", help="also write the JSON report to this file")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sgcm", description="Sequentially generalized Cohen-Macaulay toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, help=f"run {name} on a session file")
        p.add_argument("session", help="path to a .sgcm session file")
        p.add_argument("--module", help="module name (default: the first declared)")
        p.add_argument("--filtration", help="filtration name (default: the dimension filtration)")
        p.add_argument("--sop", help="system of parameters name (default: the only one, else search)")
        p.add_argument("--grid", type=int, default=3, help="grid bound N for exponent tables (default 3)")
        p.add_argument("--bound", type=int, default=2, help="exponent bound B for dd checks (default 2)")
        p.add_argument("--budget", type=int, default=20, help="number of seeds to try in searches (default 20)")
        _add_common(p)
    p = sub.add_parser("verify-paper-example", help="verify a packaged worked example")
    p.add_argument("example", choices=sorted(CORPUS), help="example id")
    _add_common(p)
    return parser


def _emit(report: AnalysisReport, args) -> None:
    text = report.to_json() if args.json else report.to_text()
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(report.to_json(), encoding="utf-8")


def run(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    start = time.perf_counter()
    try:
        if args.command == "verify-paper-example":
            checks = verify_example(args.example)
            report = AnalysisReport(command=argv, session=f"corpus/{CORPUS[args.example]}", seed=args.seed)
            report.checks = checks
            report.exit_code = OK if all(c.passed for c in checks) else NEGATIVE
        else:
            if args.grid < 1 or args.bound < 1 or args.budget < 1:
                raise SessionError("--grid, --bound and --budget must be positive")
            session = parse_session(args.session)
            report = COMMANDS[args.command](Context(session, args))
    except (SessionError, ContainmentError) as exc:
        sys.stderr.write(f"sgcm: input error: {exc}\n")
        return INPUT_ERROR
    if args.timing:
        report.timing = {"total": time.perf_counter() - start}
    _emit(report, args)
    return report.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
