"""CLI command checking the inclusion-exclusion identity for N*_d."""

import logging
import sys

from ..core.errors import SpecFileError
from ..sieve.identity import format_identity_report, verify_ie_identity
from .common import (
    EXIT_DISAGREEMENT,
    add_budget_arguments,
    add_parallel_arguments,
    add_orbifold_arguments,
    add_output_arguments,
    emit,
    int_list,
    make_record,
    resolve_budget,
    resolve_orbifold,
    run_guarded,
)

logger = logging.getLogger(__name__)


def _identity(args) -> int:
    orbifold = resolve_orbifold(args)
    d = tuple(args.sign_pattern) if args.sign_pattern is not None else orbifold.c
    if len(d) != len(orbifold.c):
        raise SpecFileError(f"--d needs {len(orbifold.c)} entries")
    budget = resolve_budget(args)
    report = verify_ie_identity(d, orbifold.m, orbifold.k, args.B, budget=budget,
                                threads=args.threads)

    config = {"orbifold": orbifold.to_dict(), "d": list(d), "B": args.B}
    emit(args, make_record("identity", config, report.to_dict()),
         text=format_identity_report(report))
    if not report.holds:
        print(f"ERROR: Numerical disagreement: difference {report.difference}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    return 0


def identity_command(args):
    """Execute identity command.

    Returns:
        0 when both sides agree, 5 on a mismatch
    """
    return run_guarded(_identity, args)


def setup_parser(subparsers):
    """Setup argument parser for identity command."""
    parser = subparsers.add_parser('identity', help='Check N*_d(B) = sum varpi(s,t) N_d(B,s,t)')
    add_orbifold_arguments(parser)
    parser.add_argument('--d', dest='sign_pattern', type=int_list,
                        help='Coefficients d (default: the orbifold coefficients)')
    parser.add_argument('--B', type=int, required=True, help='Height bound')
    add_budget_arguments(parser)
    add_parallel_arguments(parser)
    add_output_arguments(parser)
    parser.set_defaults(func=identity_command)
