"""Command-line entry point: check, verify, scan, catalog, realize, subgroup.

Complex arguments use the literal grammar "re", "imi" or "re+imi", e.g. -3 or
0.5+0.8660254i. Literals that start with "-" and carry an imaginary part must be
passed after "--" (positionals) or as --option=value.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import NoReturn

from packages.kleinian.catalog import catalog_entries, lookup
from packages.kleinian.characters import PrincipalCharacter
from packages.kleinian.errors import DegenerateCharacter, KleinianError
from packages.kleinian.inequalities import Verdict, battery
from packages.kleinian.logging import configure_logging
from packages.kleinian.oracle import realize, run_identity_suite
from packages.kleinian.recursions import SubgroupFamily, subgroup_character
from packages.kleinian.scan import ScanSpec, run_scan, write_csv, write_scan
from packages.kleinian.schemas import (
    IDENTITY_REPORT_ADAPTER,
    BatteryPayload,
    CatalogEntryPayload,
    CatalogPayload,
    CharacterPayload,
    RealizationPayload,
    build_assumptions,
    build_identity_report,
    identity_failures,
    parse_complex,
)
from packages.kleinian.settings import settings
from packages.kleinian.sympoly import verify_printed_identities

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNCONDITIONAL = 2
EXIT_CONDITIONAL = 3
EXIT_DEGENERATE = 4
EXIT_VERIFY_FAILED = 5

VERDICT_EXIT: dict[Verdict, int] = {
    Verdict.PASSES_ALL: EXIT_OK,
    Verdict.VIOLATES_UNCONDITIONAL: EXIT_UNCONDITIONAL,
    Verdict.VIOLATES_CONDITIONAL: EXIT_CONDITIONAL,
    Verdict.DEGENERATE: EXIT_DEGENERATE,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except KleinianError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _f_order_arg(text: str) -> int | str:
    if text.strip().lower() == "none":
        return "none"
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer or 'none', got {text!r}") from exc
    if value < 2:
        raise argparse.ArgumentTypeError("order of f must be >= 2")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _add_character_args(parser: argparse.ArgumentParser, optional: bool = False) -> None:
    nargs = "?" if optional else None
    parser.add_argument("gamma", type=_complex_arg, nargs=nargs, help="gamma = tr[f,g] - 2")
    parser.add_argument("beta", type=_complex_arg, nargs=nargs, help="beta(f) = tr^2 f - 4")
    parser.add_argument("beta_g", type=_complex_arg, nargs=nargs, help="beta(g) = tr^2 g - 4")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kleinian", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", help="Run the inequality battery on a character.")
    _add_character_args(check, optional=True)
    check.add_argument("--entry", help="Use a catalog entry's character instead of literals.")
    check.add_argument("--n", type=_positive_int, default=None, help="Family depth N.")
    check.add_argument(
        "--assume-f-order",
        type=_f_order_arg,
        default=None,
        help="Known order of f (integer >= 2), or 'none' when f has no small finite order.",
    )
    check.add_argument(
        "--assume-g-order2", action="store_true", help="Treat g as an involution."
    )

    verify = sub.add_parser("verify", help="Check printed identities and the matrix oracle.")
    verify.add_argument("--n", type=_positive_int, default=None, help="Oracle depth N.")
    verify.add_argument("--samples", type=_positive_int, default=None)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--skip-oracle", action="store_true")

    scan = sub.add_parser("scan", help="Scan a gamma rectangle at fixed beta (beta_g = -4).")
    scan.add_argument("--beta", type=_complex_arg, required=True)
    scan.add_argument("--gamma-min", type=_complex_arg, required=True)
    scan.add_argument("--gamma-max", type=_complex_arg, required=True)
    scan.add_argument("--nx", type=int, default=64)
    scan.add_argument("--ny", type=int, default=64)
    scan.add_argument("--n", type=_positive_int, default=None, help="Family depth N.")
    scan.add_argument("--format", choices=("csv", "pgm"), default="csv")
    scan.add_argument("--out", type=Path, default=None, help="Output path (stdout for csv).")
    scan.add_argument("--workers", type=_positive_int, default=None)

    catalog = sub.add_parser("catalog", help="List catalog groups or show one.")
    catalog.add_argument("name", nargs="?")

    realize_cmd = sub.add_parser("realize", help="Realize a character as matrices.")
    _add_character_args(realize_cmd)

    subgroup = sub.add_parser("subgroup", help="Character of a derived subgroup.")
    subgroup.add_argument("family", choices=[family.value for family in SubgroupFamily])
    subgroup.add_argument("n", type=_positive_int)
    _add_character_args(subgroup)
    return parser


def _character(args: argparse.Namespace) -> PrincipalCharacter:
    return PrincipalCharacter(args.gamma, args.beta, args.beta_g)


def _emit(payload_json: str) -> None:
    sys.stdout.write(payload_json + "\n")


def cmd_check(args: argparse.Namespace) -> int:
    if args.entry:
        char = lookup(args.entry).character
    elif args.gamma is None or args.beta is None or args.beta_g is None:
        raise ValueError("check needs gamma, beta and beta_g (or --entry)")
    else:
        char = _character(args)
    assumptions = build_assumptions(args.assume_f_order, args.assume_g_order2)
    result = battery(char, depth=args.n, assumptions=assumptions)
    _emit(BatteryPayload.from_result(result).model_dump_json(indent=2))
    return VERDICT_EXIT[result.verdict]


def cmd_verify(args: argparse.Namespace) -> int:
    printed = verify_printed_identities()
    oracle = []
    if not args.skip_oracle:
        oracle = run_identity_suite(samples=args.samples, depth=args.n, seed=args.seed)
    report = build_identity_report(printed, oracle)
    _emit(IDENTITY_REPORT_ADAPTER.dump_json(report, indent=2).decode())
    failures = identity_failures(report)
    if not failures:
        sys.stderr.write("all identities pass\n")
        return EXIT_OK
    sys.stderr.write("identity failures: " + ", ".join(failures) + "\n")
    return EXIT_VERIFY_FAILED


def cmd_scan(args: argparse.Namespace) -> int:
    spec = ScanSpec(
        beta=args.beta,
        gamma_min=args.gamma_min,
        gamma_max=args.gamma_max,
        nx=args.nx,
        ny=args.ny,
        depth=args.n or settings.family_depth,
    )
    if args.format == "pgm" and args.out is None:
        raise ValueError("pgm output needs --out")
    result = run_scan(spec, workers=args.workers)
    if args.out is None:
        write_csv(result, sys.stdout)
        return EXIT_OK
    try:
        write_scan(result, args.out, args.format)
    except OSError as exc:
        sys.stderr.write(f"cannot write {args.out}: {exc.strerror or exc}\n")
        return EXIT_USAGE
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.name:
        _emit(CatalogEntryPayload.from_entry(lookup(args.name)).model_dump_json(indent=2))
        return EXIT_OK
    entries = [CatalogEntryPayload.from_entry(entry) for entry in catalog_entries()]
    _emit(CatalogPayload(entries=entries).model_dump_json(indent=2))
    return EXIT_OK


def cmd_realize(args: argparse.Namespace) -> int:
    realization = realize(_character(args))
    _emit(RealizationPayload.from_realization(realization).model_dump_json(indent=2))
    return EXIT_OK


def cmd_subgroup(args: argparse.Namespace) -> int:
    char = subgroup_character(_character(args), SubgroupFamily(args.family), args.n)
    _emit(CharacterPayload.from_character(char).model_dump_json(indent=2))
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "catalog": cmd_catalog,
    "realize": cmd_realize,
    "subgroup": cmd_subgroup,
}


def main(argv: Sequence[str] | None = None) -> int:
    configure_logging("cli", settings.log_level)
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except DegenerateCharacter as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DEGENERATE
    except KeyError as exc:
        sys.stderr.write(f"error: {exc.args[0] if exc.args else exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        logger.debug("command_failed", extra={"command": args.command, "error": str(exc)})
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
