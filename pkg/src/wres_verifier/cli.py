"""Command-line front end.

Exit codes: 0 success, 2 engine inconsistency (exact and numeric coefficient
paths disagree), 64 usage error, 65 computation error. Disagreements with
printed formulas are findings and never change the exit code.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from pydantic import ValidationError

from wres_verifier import __version__
from wres_verifier.assembler import THEOREM_CASES
from wres_verifier.config import configure_logging, load_config
from wres_verifier.core.session_manager import BOUNDARY_VARIANTS, Session
from wres_verifier.errors import (
    ExpressionSyntaxError,
    UnknownCoefficient,
    UnknownFixture,
    UnknownTheorem,
    WresError,
)
from wres_verifier.report import FORMATS, ReportDocument, emit_report

logger = logging.getLogger("wres_verifier.cli")

EXIT_OK = 0
EXIT_INCONSISTENT = 2
EXIT_USAGE = 64
EXIT_COMPUTATION = 65

USAGE_ERRORS = (UnknownCoefficient, UnknownTheorem, UnknownFixture, ExpressionSyntaxError, ValidationError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def even_dimension(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if n < 4 or n % 2:
        raise argparse.ArgumentTypeError(f"n must be an even integer >= 4, got {n}")
    return n


def dimension_list(text: str) -> list[int]:
    return [even_dimension(part) for part in text.split(",") if part.strip()]


def _common_options() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", type=Path, default=argparse.SUPPRESS, help="TOML file with a [wres] table.")
    common.add_argument("--fixtures", type=Path, default=argparse.SUPPRESS, help="Fixture directory (default: bundled corpus).")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=argparse.SUPPRESS)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--output", type=Path, default=argparse.SUPPRESS, help="Write the report here instead of stdout.")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _Parser(prog="wres-verifier", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeff", parents=[common], help="Exact value of one catalog coefficient.")
    p.add_argument("name")
    p.add_argument("--n", type=even_dimension, required=True)
    p.add_argument("--closed", action="store_true", help="Evaluate the printed closed form instead.")

    p = sub.add_parser("verify-coeffs", parents=[common], help="Three-way check of the coefficient catalog.")
    p.add_argument("--n", type=dimension_list, default=[4], help="Comma-separated even dimensions.")
    p.add_argument("--names", type=lambda s: [x for x in s.split(",") if x], default=None)
    p.add_argument("--precision", type=int, default=None, help="Working precision in bits.")
    p.add_argument("--nodes", type=int, default=None, help="Quadrature nodes on the circle.")

    p = sub.add_parser("piplus", parents=[common], help="pi+ projection of a rational function of xi.")
    p.add_argument("expr")

    p = sub.add_parser("residue", parents=[common], help="Residue of a rational function of xi.")
    p.add_argument("expr")
    p.add_argument("--at", default="i")

    p = sub.add_parser("boundary", parents=[common], help="Boundary term of a theorem.")
    p.add_argument("--theorem", type=str.upper, choices=sorted(THEOREM_CASES), required=True)
    p.add_argument("--n", type=even_dimension, required=True)
    p.add_argument("--variant", choices=BOUNDARY_VARIANTS, default="fixture")
    p.add_argument("--cases", action="store_true", help="Also print every case.")

    p = sub.add_parser("interior", parents=[common], help="Interior term of the Einstein functional.")
    p.add_argument("--n", type=even_dimension, required=True)

    p = sub.add_parser("reconcile", parents=[common], help="Fixture vs derived vs printed statement.")
    p.add_argument("--theorem", type=str.upper, choices=sorted(THEOREM_CASES), required=True)
    p.add_argument("--n", type=even_dimension, required=True)
    p.add_argument("--no-alternate", action="store_true", help="Skip the printed pi+ branch column.")

    p = sub.add_parser("fixtures", parents=[common], help="List the fixture corpus.")
    p.add_argument("--show", metavar="ID", default=None)

    p = sub.add_parser("check-fixtures", parents=[common], help="Recompute fixture intermediates.")
    p.add_argument("--n", type=even_dimension, default=4)
    return parser


def _session(args: argparse.Namespace) -> Session:
    overrides = {
        "fixtures_dir": getattr(args, "fixtures", None),
        "log_level": getattr(args, "log_level", None),
        "precision_bits": getattr(args, "precision", None),
        "nodes": getattr(args, "nodes", None),
    }
    if getattr(args, "no_alternate", False):
        overrides["aa38_alternate"] = False
    config = load_config(getattr(args, "config", None), overrides=overrides)
    configure_logging(config.log_level)
    return Session(config)


def _plain_value(doc: ReportDocument) -> str:
    if len(doc.records) == 1:
        return doc.records[0]["value"] + "\n"
    return "".join(f"{r['subject']}: {r['value']}\n" for r in doc.records)


def _dispatch(args: argparse.Namespace, fmt: str) -> tuple[str, int]:
    session = _session(args)
    command = args.command
    status = EXIT_OK
    if command == "coeff":
        doc = session.coefficient(args.name, args.n, args.closed)
    elif command == "verify-coeffs":
        doc, consistent = session.verify_coefficients(args.names, args.n)
        status = EXIT_OK if consistent else EXIT_INCONSISTENT
        return emit_report(doc, fmt), status
    elif command == "piplus":
        doc = session.pi_plus(args.expr)
    elif command == "residue":
        doc = session.residue(args.expr, args.at)
    elif command == "boundary":
        doc = session.boundary(args.theorem, args.n, args.variant, args.cases)
    elif command == "interior":
        doc = session.interior(args.n)
    elif command == "reconcile":
        return emit_report(session.reconcile(args.theorem, args.n), fmt), status
    elif command == "check-fixtures":
        return emit_report(session.fixture_checks(args.n), fmt), status
    elif command == "fixtures":
        if args.show:
            return session.show_fixture(args.show), status
        rows = session.list_fixtures()
        width = max(len(r["id"]) for r in rows) if rows else 0
        return "".join(f"{r['id']:<{width}}  {r['terms']:>3}  {r['anchor']}\n" for r in rows), status
    else:  # pragma: no cover
        raise UsageError(f"unknown command {command}")
    if fmt == "plain":
        return _plain_value(doc), status
    return emit_report(doc, fmt), status


def run_command(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Runs one subcommand and returns its exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    fmt = getattr(args, "format", "plain")
    try:
        text, status = _dispatch(args, fmt)
    except USAGE_ERRORS as exc:
        print(f"wres-verifier: {exc}", file=stderr)
        return EXIT_USAGE
    except (WresError, ValueError, KeyError, ZeroDivisionError, OSError) as exc:
        logger.debug("computation failed", exc_info=True)
        print(f"wres-verifier: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_COMPUTATION
    output = getattr(args, "output", None)
    if output is not None:
        Path(output).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return status


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
