"""
Command-line entry point.

    ellft chartab S4
    ellft ft C2 --twisted
    ellft pairs E7 A4+A1
    ellft verify --group E8 --check main --format json

Exit codes: 0 when no check failed, 1 on a failed check (or a partial one with
``--no-allow-partial``), 2 on usage and configuration errors, 3 on catalog errors.
"""
import argparse
import json
import sys
from typing import List, Optional

from .chartab import format_table, table_to_json
from .core import EllFT
from .report import CHECK_ORDER, render_json, render_text
from .utils.config import Config, DEFAULT_CONFIG
from .utils.error_handler import CatalogError, CheckConfigError, EllFTError
from .utils.logger import logger

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CATALOG = 3


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", help="Catalog JSON file (default: the shipped catalog or $ELLFT_CATALOG)")
    common.add_argument("--config", metavar="FILE", help="JSON file of options overlaying the defaults")
    common.add_argument("--format", choices=("text", "json"), default="text", help="Output format")
    common.add_argument("--debug", action="store_true", default=None, help="Enable debug logging")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="ellft",
                                     description="Exact checks of the elliptic Fourier transform identities")
    sub = parser.add_subparsers(dest="command", metavar="{chartab,ft,pairs,verify}")
    sub.required = True

    p = sub.add_parser("chartab", parents=[common], help="Print the character table of a registry group")
    p.add_argument("group", help="Registry group, e.g. S4 or C2xC4")

    p = sub.add_parser("ft", parents=[common], help="Print the Fourier matrix of a family group")
    p.add_argument("gamma", help="Family group: 1, C2, S3, S4 or S5")
    p.add_argument("--twisted", action="store_true", help="Apply the Delta twist (C2 only)")

    p = sub.add_parser("pairs", parents=[common], help="List the elliptic pairs of a unipotent class")
    p.add_argument("group", help="G2, F4, E6, E7 or E8")
    p.add_argument("unipotent", help="Unipotent class, e.g. A4+A1")

    p = sub.add_parser("verify", parents=[common], help="Run the verification checks")
    p.add_argument("--group", help="Restrict to one exceptional group")
    p.add_argument("--unipotent", help="Restrict to one unipotent class")
    p.add_argument("--check", choices=CHECK_ORDER + ("all",), default="all", help="Check to run")
    p.add_argument("--allow-partial", dest="allow_partial", action="store_true", default=None,
                   help="Partial entries do not affect the exit code (default)")
    p.add_argument("--no-allow-partial", dest="allow_partial", action="store_false",
                   help="Partial entries make the exit code 1")
    return parser


def _make_config(args: argparse.Namespace) -> Config:
    config = Config(DEFAULT_CONFIG)
    if args.config:
        try:
            config.load_from_file(args.config)
        except (OSError, TypeError, ValueError) as e:
            raise CheckConfigError(f"Cannot load config file {args.config}: {e}", error_code="CONFIG_FILE",
                                   details={'path': args.config})
    config.load_from_env()
    if args.catalog:
        config.set('catalog_path', args.catalog)
    if args.debug is not None:
        config.set('debug', args.debug)
    return config


def _pairs_text(group: str, unipotent: str, pairs: List[dict]) -> str:
    lines = [f"{group} {unipotent}: {len(pairs)} pairs"]
    for p in pairs:
        flags = [] if p['split'] else ["not split"]
        if not p['counted']:
            flags.append("not counted")
        if not p['restriction']:
            flags.append("no restriction")
        tail = f"  [{', '.join(flags)}]" if flags else ""
        lines.append(f"  {p['pair']:<16} dual {p['dual']:<16} A_su={p['a_su']}{tail}")
        if p['combination']:
            lines.append(f"      {p['combination']}")
    return "\n".join(lines)


def run(args: argparse.Namespace) -> int:
    config = _make_config(args)
    ft = EllFT(config=config.as_dict)
    as_json = args.format == "json"

    if args.command == "chartab":
        table = ft.character_table(args.group)
        print(json.dumps(table_to_json(table), indent=2, ensure_ascii=False) if as_json else format_table(table))
        return EXIT_OK
    if args.command == "ft":
        out = ft.fourier_matrix(args.gamma, args.twisted, as_json=as_json)
        print(json.dumps(out, indent=2, ensure_ascii=False) if as_json else out)
        return EXIT_OK
    if args.command == "pairs":
        pairs = ft.elliptic_pairs(args.group, args.unipotent)
        print(json.dumps(pairs, indent=2, ensure_ascii=False) if as_json
              else _pairs_text(args.group, args.unipotent, pairs))
        return EXIT_OK

    allow_partial = config.get('allow_partial', True) if args.allow_partial is None else args.allow_partial
    report = ft.verify(args.check, group=args.group, unipotent=args.unipotent)
    print(render_json(report, allow_partial) if as_json else render_text(report, allow_partial))
    return report.exit_status(allow_partial)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return run(args)
    except CatalogError as e:
        logger.error(str(e))
        print(f"catalog error: {e}", file=sys.stderr)
        return EXIT_CATALOG
    except EllFTError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
