"""CLI command for the major/minor arc dissection and minor-arc scan."""

import logging

from ..circle.arcs import format_minor_arc_scan, minor_arc_scan, minor_arcs
from .common import (
    add_output_arguments,
    add_problem_arguments,
    emit,
    make_record,
    resolve_problem,
    run_guarded,
)

logger = logging.getLogger(__name__)


def _arcs(args) -> int:
    problem = resolve_problem(args)
    dissection = minor_arcs(args.B, args.delta, n=len(problem.d) - 1, m_max=max(problem.m_tilde))
    rows = minor_arc_scan(problem.d, problem.zeta, problem.m_tilde, args.B, args.delta, args.samples)
    logger.debug(f"{len(dissection.arcs)} major arcs, minor measure {dissection.minor_measure:.4f}")

    config = {"problem": problem.to_dict(), "B_tilde": args.B, "delta": args.delta,
              "samples": args.samples}
    result = {"dissection": dissection.to_dict(), "scan": [row.to_dict() for row in rows]}
    emit(args, make_record("arcs", config, result), text=format_minor_arc_scan(rows),
         rows=[row.to_dict() for row in rows])
    return 0


def arcs_command(args):
    """Execute arcs command."""
    return run_guarded(_arcs, args)


def setup_parser(subparsers):
    """Setup argument parser for arcs command."""
    parser = subparsers.add_parser('arcs', help='Sample Weyl sums on the minor arcs')
    add_problem_arguments(parser)
    parser.add_argument('--B', type=float, required=True, help='Height B~')
    parser.add_argument('--delta', type=float, default=0.01, help='Width exponent delta in (0, 1)')
    parser.add_argument('--samples', type=int, default=2000, help='Grid points on [0, 1]')
    add_output_arguments(parser)
    parser.set_defaults(func=arcs_command)
