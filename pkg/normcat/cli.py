"""Command-line entry point: ``normcat decompose|verify|random|cross-check``.

Exit status is 0 when every record passes (expected failures included), 1
when any record fails, and 2 for unreadable input or bad usage.
"""
import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import config
from .__version__ import __version__
from .docs import load_text, render_doc
from .errors import ParseError, UnknownSuite, ValidationError
from .models import RecordStatus, ReportRecord
from .normcat import NormCat
from .random_docs import random_docs
from .suites import SUITES, SuiteSettings, cross_check_records, decompose_records, run_suite

logger = logging.getLogger("normcat")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normcat",
        description="Normal decompositions f = nu . kappa . pi in finite concrete categories.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--json", action="store_true", help="Print one JSON record per line")
    parser.add_argument("--timings", action="store_true", help="Keep wall times in the records")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log to stderr (-vv for debug)")
    commands = parser.add_subparsers(dest="command", required=True)

    decompose = commands.add_parser("decompose", help="Decompose one morphism of an instance document")
    decompose.add_argument("file", type=Path)
    decompose.add_argument("morphism")

    verify = commands.add_parser("verify", help="Run a verification suite")
    verify.add_argument("suite", help=f"One of {', '.join(sorted(SUITES))} or all")
    verify.add_argument("--max-order", type=int, default=None)
    verify.add_argument("--max-carrier", type=int, default=None)
    verify.add_argument("--samples", type=int, default=None)
    verify.add_argument("--squares", type=int, default=None, help="Random commuting squares per instance")
    verify.add_argument("--seed", type=int, default=None)

    rand = commands.add_parser("random", help="Print seeded random instance documents")
    rand.add_argument("kind")
    rand.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    rand.add_argument("--count", type=int, default=1)
    rand.add_argument("--max-order", type=int, default=None)
    rand.add_argument("--max-carrier", type=int, default=None)

    cross = commands.add_parser("cross-check", help="Run generic and closed-form paths on every morphism")
    cross.add_argument("file", type=Path)
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def settings_from(args: argparse.Namespace) -> SuiteSettings:
    overrides = {
        name: getattr(args, name)
        for name in ("max_order", "max_carrier", "samples", "squares", "seed")
        if getattr(args, name) is not None
    }
    if args.max_order is not None:
        overrides["grp_order"] = args.max_order
    return SuiteSettings(**overrides)


def format_record(record: ReportRecord, as_json: bool, timings: bool) -> str:
    if not timings:
        record = {k: v for k, v in record.items() if k != "seconds"}
    if as_json:
        return json.dumps(record, sort_keys=True, ensure_ascii=False)
    line = f"{record['status']:<13} {record['statement']}  {record['detail']}"
    if timings:
        line += f"  ({record['seconds']:.3f}s)"
    return line


def format_decomposition(record: ReportRecord) -> List[str]:
    """The factor maps of a ``decompose`` record, one per line."""
    witness = record["witness"]
    lines = []
    for factor in ("pi", "kappa", "nu", "hat", "check", "tau", "sigma"):
        if factor in witness:
            described = witness[factor]
            lines.append(f"  {factor:<6} {described['dom']} -> {described['cod']}: {described['map']}")
    for flag in ("normal_mono", "normal_epi", "comparison", "tau_strict", "sigma_strict"):
        if flag in witness:
            lines.append(f"  {flag}: {str(witness[flag]).lower()}")
    return lines


def emit(records: Sequence[ReportRecord], args: argparse.Namespace) -> int:
    for record in records:
        print(format_record(record, args.json, args.timings))
        if args.command == "decompose" and not args.json and record["status"] == RecordStatus.PASS.value:
            for line in format_decomposition(record):
                print(line)
    failed = any(r["status"] == RecordStatus.FAIL.value for r in records)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_decompose(args: argparse.Namespace, nc: NormCat) -> int:
    loaded = load_text(nc, args.file.read_text(encoding="utf-8"))
    return emit(decompose_records(loaded, args.morphism), args)


def cmd_verify(args: argparse.Namespace, nc: NormCat) -> int:
    return emit(asyncio.run(run_suite(args.suite, settings_from(args), nc)), args)


def cmd_random(args: argparse.Namespace, nc: NormCat) -> int:
    for doc in random_docs(args.kind, args.seed, args.count, args.max_carrier, args.max_order, nc):
        print(render_doc(doc, compact=True))
    return EXIT_OK


def cmd_cross_check(args: argparse.Namespace, nc: NormCat) -> int:
    loaded = load_text(nc, args.file.read_text(encoding="utf-8"))
    return emit(cross_check_records(loaded), args)


COMMANDS = {
    "decompose": cmd_decompose,
    "verify": cmd_verify,
    "random": cmd_random,
    "cross-check": cmd_cross_check,
}


def run(args: argparse.Namespace) -> int:
    return COMMANDS[args.command](args, NormCat())


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    configure_logging(args.verbose)
    try:
        return run(args)
    except (ParseError, ValidationError, UnknownSuite) as e:
        print(f"normcat: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"normcat: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
