"""
Command-line front end.

    run_pipeline.py zeta --input elliptic.zeta
    run_pipeline.py verify --input p2.zeta --r 1 --json
    run_pipeline.py abgrp z --source 4 --target 2 --matrix "[[1]]"

Reports go to stdout, logs to stderr. Exit codes: 0 success, 2 bad input,
3 size guard, 4 mathematical inconsistency, 5 failed hypothesis.
"""

import argparse
import json
import re
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from rich.console import Console

from cli.input_parser import FieldSection, InputDocument, parse_input
from cli.orchestrator import ABGRP_OPERATIONS, COMMANDS, execute_pipeline, run_abgrp
from cli.render import render_report
from cli.reports import emit_json
from utils.exceptions import InputError, ZetaToolError, as_tool_error
from utils.logging import get_enumeration_summary, get_logger, reset_enumeration_usage, set_log_level

logger = get_logger(__name__)


def parse_q(text: str) -> Tuple[int, int]:
    """``"5^2"`` -> (5, 2); ``"7"`` -> (7, 1)."""
    match = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", text)
    if not match:
        raise InputError(f"--q expects P or P^K, got {text!r}", error_code="VALIDATION_ERROR")
    return int(match.group(1)), int(match.group(2) or 1)


def _json_arg(text: Optional[str], flag: str):
    if text is None:
        return None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{flag} is not valid JSON: {e}", error_code="VALIDATION_ERROR")


def _orders(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated orders, got {text!r}", error_code="VALIDATION_ERROR")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit the versioned machine format")
    common.add_argument("--verbose", action="store_true", help="Debug logging and enumeration summary on stderr")
    common.add_argument("--max-points", type=int, help="Size guard override for enumerations")
    common.add_argument("--workers", type=int, help="Worker processes for point counting")
    common.add_argument("--seed", type=int, default=0, help="Seed for randomized corpora")

    variety = argparse.ArgumentParser(add_help=False)
    variety.add_argument("--input", type=str, help="Input document")
    variety.add_argument("--q", type=str, help="Field as P^K, replaces [field]")
    variety.add_argument("--terms", type=int, help="Number of point counts M")
    variety.add_argument("--r", type=int, help="Twist r for special values")

    parser = argparse.ArgumentParser(
        prog="run_pipeline.py",
        description="Zeta functions of varieties over finite fields and their special values",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Point counts of the projective plane over F_2
  python run_pipeline.py count --input pipeline_test/inputs/p2_f2.zeta --terms 5

  # Zeta function of an elliptic curve over F_5
  python run_pipeline.py zeta --input pipeline_test/inputs/elliptic_f5.zeta

  # Full verification at r = 1 in machine format
  python run_pipeline.py verify --input pipeline_test/inputs/p2_f2.zeta --r 1 --json

  # Abelian group utilities
  python run_pipeline.py abgrp selftest --seed 7
        """,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common, variety], help=f"Run the pipeline up to {command}")

    abgrp = subparsers.add_parser("abgrp", parents=[common], help="Abelian group utilities")
    abgrp.add_argument("operation", choices=ABGRP_OPERATIONS)
    abgrp.add_argument("--matrix", type=str, help="Row-major integer matrix as JSON")
    abgrp.add_argument("--source", type=str, help="Source generator orders, 0 for Z")
    abgrp.add_argument("--target", type=str, help="Target generator orders, 0 for Z")
    abgrp.add_argument("--group", type=str, help="Cyclic orders of a finite group N")
    abgrp.add_argument("--generators", type=str, help="Generators of M as JSON")
    abgrp.add_argument("--l", type=int, help="Prime l")
    abgrp.add_argument("--n", type=int, default=1, help="Exponent n")
    abgrp.add_argument("--modulus", type=int, help="Modulus p^s of the matrix ring")
    return parser


def load_document(args: argparse.Namespace) -> InputDocument:
    """Read --input and apply the command-line overrides."""
    doc = InputDocument()
    if args.input:
        doc = parse_input(Path(args.input).read_text(encoding="utf-8"))
    if args.q:
        p, k = parse_q(args.q)
        doc.field = FieldSection(p=p, k=k)
    return doc


def run(args: argparse.Namespace):
    if args.command == "abgrp":
        return run_abgrp(
            args.operation,
            matrix=_json_arg(args.matrix, "--matrix"),
            source=_orders(args.source),
            target=_orders(args.target),
            group=_orders(args.group),
            generators=_json_arg(args.generators, "--generators"),
            l=args.l,
            n=args.n,
            modulus=args.modulus,
            seed=args.seed,
        )
    return execute_pipeline(
        load_document(args),
        args.command,
        terms=args.terms,
        r=args.r,
        max_points=args.max_points,
        workers=args.workers,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run, print; returns the exit code."""
    args = build_parser().parse_args(argv)
    errors = Console(stderr=True)
    if args.verbose:
        set_log_level("DEBUG")
    reset_enumeration_usage()

    try:
        report = run(args)
    except ZetaToolError as e:
        logger.error("run failed", error=str(e), exit_code=e.exit_code)
        errors.print(f"error: {e}", markup=False, soft_wrap=True)
        return e.exit_code
    except Exception as e:
        error = as_tool_error(e, {"command": args.command})
        logger.error("run failed", error=str(error), exit_code=error.exit_code)
        errors.print(f"error: {error}", markup=False, soft_wrap=True)
        return error.exit_code
    except KeyboardInterrupt:
        logger.info("interrupted by user")
        return 1

    if args.json:
        sys.stdout.write(emit_json(report))
    else:
        render_report(report, Console())

    if args.verbose:
        errors.print(get_enumeration_summary())
    return 4 if report.inconsistent else 0
