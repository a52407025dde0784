"""CLI command for the admissibility conditions of an orbifold."""

import logging

from ..core.orbifold import check_admissible, format_admissibility_report
from .common import (
    add_orbifold_arguments,
    add_output_arguments,
    emit,
    make_record,
    resolve_orbifold,
    run_guarded,
)

logger = logging.getLogger(__name__)


def _admissible(args) -> int:
    orbifold = resolve_orbifold(args)
    report = check_admissible(orbifold)
    logger.debug(f"Admissibility verdict for {orbifold.to_dict()}: {report.in_theorem_range}")
    record = make_record("admissible", {"orbifold": orbifold.to_dict()}, report.to_dict())
    emit(args, record, text=format_admissibility_report(report))
    return 0


def admissible_command(args):
    """Execute admissibility check.

    Returns:
        0 whatever the verdict, 2 on a malformed orbifold
    """
    return run_guarded(_admissible, args)


def setup_parser(subparsers):
    """Setup argument parser for admissible command."""
    parser = subparsers.add_parser('admissible', help='Check the conditions of the counting theorem')
    add_orbifold_arguments(parser)
    add_output_arguments(parser, default='text')
    parser.set_defaults(func=admissible_command)
