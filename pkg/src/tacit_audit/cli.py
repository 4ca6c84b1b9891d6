"""Command-line entry point: ``tacit-audit <model.dsl> [options]``.

Exit codes: 0 no finding at or above ``--fail-on``; 1 some finding is;
2 usage, parse or validation error; 3 exploration hit a limit (unless
``--allow-partial``).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .findings import SEVERITY_RANK
from .lexicon import Dictionary, FormatError, load_dictionary
from .lint import LintConfig
from .ontology import load_checklist
from .oracle import ConfigError, OracleClient
from .parser import ParseError
from .pipeline import CHECKS, IMPLICIT, Options, audit
from .reachability import ExploreLimits
from .report import render
from .sampling import Budget
from .validate import ValidationError, load_model


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tacit-audit",
        description="Scan a statechart/rule model for candidate hidden assumptions.")
    p.add_argument("model", help="model file in the tacit-audit DSL")
    p.add_argument("--dictionary", metavar="FILE", help="domain word list for identifier expansion")
    p.add_argument("--checklist", metavar="FILE", help="domain checklist to diff against")
    p.add_argument("--budget", type=_nonneg, default=100, metavar="N",
                   help="max sampled questions per check (default 100)")
    p.add_argument("--seed", type=_u64, default=0, metavar="U64", help="sampling seed (default 0)")
    p.add_argument("--max-configs", type=_positive, default=1_000_000, metavar="N",
                   help="exploration configuration limit (default 1000000)")
    p.add_argument("--checks", metavar="LIST",
                   help="comma-separated checks to run (default: all): " + ",".join(CHECKS))
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--fail-on", choices=(*SEVERITY_RANK, "never"), default="violation",
                   help="lowest severity that makes the exit code 1 (default violation)")
    p.add_argument("--allow-partial", action="store_true",
                   help="do not use exit code 3 when exploration stops early")
    p.add_argument("--oracle-url", metavar="URL", default=os.environ.get("TACIT_ORACLE_URL"),
                   help="semantic oracle endpoint (also TACIT_ORACLE_URL)")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def display_path(path: str) -> str:
    """Relative form of ``path`` so reports carry no absolute paths."""
    if os.path.isabs(path):
        try:
            return os.path.relpath(path)
        except ValueError:
            return os.path.basename(path)
    return os.path.normpath(path)


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2

    def fail(msg: str) -> int:
        print(f"tacit-audit: error: {msg}", file=sys.stderr)
        return 2

    checks = set(CHECKS)
    if args.checks:
        names = {c.strip() for c in args.checks.split(",") if c.strip()}
        unknown = names - set(CHECKS) - set(IMPLICIT)
        if unknown:
            return fail(f"unknown check(s): {', '.join(sorted(unknown))}")
        checks = names & set(CHECKS)

    model_path = display_path(args.model)
    try:
        text = Path(args.model).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        return fail(f"cannot read {args.model}: {exc}")
    try:
        model = load_model(text, model_path)
    except ParseError as exc:
        return fail(f"{model_path}:{exc.line}:{exc.col}: parse error: expected {exc.expected}, "
                    f"found {exc.found}")
    except ValidationError as exc:
        for e in exc.errors:
            print(f"{model_path}:{e.line}: {e.message}", file=sys.stderr)
        return fail(f"{len(exc.errors)} validation error(s)")

    dictionary = Dictionary()
    if args.dictionary:
        try:
            dictionary = load_dictionary(args.dictionary)
        except (OSError, FormatError) as exc:
            return fail(str(exc))
    checklist = None
    if args.checklist:
        try:
            checklist = load_checklist(args.checklist, display_path(args.checklist))
        except (OSError, UnicodeDecodeError) as exc:
            return fail(f"cannot read {args.checklist}: {exc}")
    oracle = None
    if args.oracle_url:
        try:
            oracle = OracleClient(args.oracle_url)
        except ConfigError as exc:
            return fail(str(exc))

    opts = Options(
        checks=frozenset(checks),
        budget=Budget(args.budget, args.seed),
        limits=ExploreLimits(max_configurations=args.max_configs),
        lint=LintConfig(),
        dictionary=dictionary,
        checklist=checklist,
        oracle=oracle,
    )
    outcome = audit(model, opts)
    for note in outcome.notes:
        print(f"tacit-audit: {note}", file=sys.stderr)
    output = render(outcome.report, args.format)
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)

    if outcome.partial and not args.allow_partial:
        return 3
    if args.fail_on != "never":
        threshold = SEVERITY_RANK[args.fail_on]
        if any(SEVERITY_RANK[f.severity] >= threshold for f in outcome.report.findings):
            return 1
    return 0


def main() -> None:
    sys.exit(run_cli())
