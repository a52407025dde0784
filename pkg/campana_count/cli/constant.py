"""CLI command for the leading constant of the Campana point count."""

import logging

from ..circle.predict import format_constant_estimate, leading_constant, leading_constant_full
from ..core.errors import SpecFileError
from .common import (
    add_orbifold_arguments,
    add_output_arguments,
    add_truncation_arguments,
    emit,
    int_list,
    make_record,
    resolve_orbifold,
    resolve_truncation,
    run_guarded,
)

logger = logging.getLogger(__name__)


def _constant(args) -> int:
    orbifold = resolve_orbifold(args)
    truncation = resolve_truncation(args)
    if args.sign_pattern is not None:
        if len(args.sign_pattern) != len(orbifold.c):
            raise SpecFileError(f"--d needs {len(orbifold.c)} entries")
        d = tuple(args.sign_pattern)
        estimate = leading_constant(d, orbifold, truncation, args.threads)
    else:
        d = None
        estimate = leading_constant_full(orbifold, truncation, args.threads)
    logger.debug(f"Leading constant {estimate.value:.6g} from {estimate.terms} terms")

    config = {
        "orbifold": orbifold.to_dict(),
        "d": None if d is None else list(d),
        "truncation": truncation.to_dict(),
    }
    rows = [{"cap": cap, "partial_sum": value} for cap, value in estimate.partial_sums]
    emit(args, make_record("constant", config, estimate.to_dict()),
         text=format_constant_estimate(estimate), rows=rows)
    return 0


def constant_command(args):
    """Execute constant command."""
    return run_guarded(_constant, args)


def setup_parser(subparsers):
    """Setup argument parser for constant command."""
    parser = subparsers.add_parser('constant', help='Leading constant C of #N(X, D, B) ~ C B^(k Gamma)')
    add_orbifold_arguments(parser)
    parser.add_argument('--d', dest='sign_pattern', type=int_list,
                        help='Only the constant C_d of the positive count for these coefficients')
    add_truncation_arguments(parser)
    add_output_arguments(parser)
    parser.set_defaults(func=constant_command)
