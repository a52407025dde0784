"""CLI command comparing exact counts with the predicted main term."""

import logging
from dataclasses import asdict

from ..circle.predict import compare, format_comparison
from .common import (
    add_budget_arguments,
    add_output_arguments,
    add_problem_arguments,
    add_truncation_arguments,
    emit,
    float_list,
    make_record,
    resolve_budget,
    resolve_orbifold,
    resolve_problem,
    resolve_truncation,
    run_guarded,
)

logger = logging.getLogger(__name__)


def _compare(args) -> int:
    truncation = resolve_truncation(args)
    budget = resolve_budget(args)
    if args.target == "orbifold":
        target = resolve_orbifold(args)
    else:
        target = resolve_problem(args)
    table = compare(target, args.grid, truncation, args.threads, budget)

    config = {
        "target": args.target,
        "grid": list(args.grid),
        "truncation": truncation.to_dict(),
        "budget": asdict(budget),
    }
    rows = [row.to_dict() for row in table.rows]
    rows.append({
        "B": "fit",
        "exact": None,
        "predicted": None,
        "ratio": table.fitted_exponent,
        "status": f"expected {float(table.expected_exponent):.6f}",
    })
    skipped = sum(1 for row in table.rows if row.exact is None)
    if skipped:
        logger.warning(f"{skipped} grid point(s) exceeded the budget and were left out of the fit")

    emit(args, make_record("compare", config, table.to_dict()),
         text=format_comparison(table), rows=rows)
    return 0


def compare_command(args):
    """Execute compare command.

    Returns:
        0 on success; rows over budget are marked rather than failing the run
    """
    return run_guarded(_compare, args)


def setup_parser(subparsers):
    """Setup argument parser for compare command."""
    parser = subparsers.add_parser('compare', help='Exact counts against predicted main terms over a grid')
    add_problem_arguments(parser)
    parser.add_argument('--target', choices=['diagonal', 'orbifold'], default='diagonal',
                        help='diagonal: M_{d,zeta}(B~) vs S*J*B~^Gamma~; '
                             'orbifold: Campana points vs C*B^(k Gamma)')
    parser.add_argument('--grid', type=float_list, required=True,
                        help='Heights, e.g. --grid=1024,2048,4096')
    add_truncation_arguments(parser)
    add_budget_arguments(parser)
    add_output_arguments(parser)
    parser.set_defaults(func=compare_command)
