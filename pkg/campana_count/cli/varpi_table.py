"""CLI command listing the inclusion-exclusion weights."""

import logging
import math

from ..sieve.lattice import pair_weight
from ..sieve.varpi import varpi_table
from .common import add_output_arguments, emit, int_list, make_record, run_guarded

logger = logging.getLogger(__name__)


def _varpi_table(args) -> int:
    R = math.inf if args.R is None else args.R
    table = varpi_table(R, args.m, args.cap)
    rows = [
        {"s": list(pair.s), "t": [list(row) for row in pair.t],
         "weight": pair_weight(pair, args.m), "varpi": value}
        for pair, value in table
    ]
    nonzero = sum(1 for row in rows if row["varpi"])
    logger.debug(f"{len(rows)} pairs, {nonzero} with nonzero weight")
    config = {"m": list(args.m), "R": args.R, "cap": args.cap}
    text = "\n".join(f"s={row['s']} t={row['t']} weight={row['weight']} varpi={row['varpi']:+d}"
                     for row in rows)
    emit(args, make_record("varpi-table", config, {"pairs": rows, "nonzero": nonzero}),
         text=text, rows=rows)
    return 0


def varpi_table_command(args):
    """Execute varpi-table command."""
    return run_guarded(_varpi_table, args)


def setup_parser(subparsers):
    """Setup argument parser for varpi-table command."""
    parser = subparsers.add_parser('varpi-table', help='List (s, t) pairs with their inclusion-exclusion weight')
    parser.add_argument('--m', type=int_list, required=True, help='Weights, e.g. --m=2,2,2')
    parser.add_argument('--R', type=float, help='Coordinate bound (omit for all pairs up to --cap)')
    parser.add_argument('--cap', type=int, help='Bound on the product of support primes')
    add_output_arguments(parser, default='csv')
    parser.set_defaults(func=varpi_table_command)
