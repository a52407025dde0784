"""CLI interface for campana-count."""

import argparse
import logging
import sys

from . import admissible, arcs, compare, constant, count, decompose, identity, integral, predict
from . import series, varpi_table

logging.basicConfig(
    format='%(levelname)s: %(message)s',
    level=logging.WARNING
)

# (heading, modules) in help order; each module supplies setup_parser
COMMAND_GROUPS = (
    ("orbifold", (decompose, admissible)),
    ("exact counting", (count, identity, varpi_table)),
    ("circle method", (predict, compare, constant, series, integral, arcs)),
)

EPILOG = """\
command groups:
  orbifold        decompose, admissible
                  m-full decompositions and the admissibility hypotheses
  exact counting  count, identity, varpi-table
                  N(B), N*_d, M_{d,zeta}(B~) and the inclusion-exclusion weights
  circle method   predict, compare, constant, series, integral, arcs
                  main terms, the leading constant and their ingredients

exit codes: 0 ok, 1 unexpected, 2 usage or spec file, 3 domain,
            4 budget exceeded, 5 numerical disagreement
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='campana-count',
        description='Exact counts and circle-method predictions for Campana points '
                    'on diagonal hypersurfaces',
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('--debug', action='store_true', help='Enable debug logging')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND',
                                       help='One of the commands listed below')
    for _, modules in COMMAND_GROUPS:
        for module in modules:
            module.setup_parser(subparsers)
    return parser


def main():
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args()

    if args.debug:
        logging.getLogger().setLevel(logging.DEBUG)

    if not hasattr(args, 'func'):
        parser.print_help()
        sys.exit(0)

    try:
        exit_code = args.func(args)
    except Exception as e:
        # commands map CampanaError to their own codes; anything left is a bug
        print(f"ERROR: {type(e).__name__}: {e}", file=sys.stderr)
        if args.debug:
            import traceback
            traceback.print_exc(file=sys.stderr)
        sys.exit(1)
    sys.exit(exit_code if exit_code is not None else 0)


if __name__ == '__main__':
    main()
