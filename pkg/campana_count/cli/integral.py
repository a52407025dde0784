"""CLI command for the singular integral."""

import logging
from dataclasses import replace

from ..circle.integral import cross_check_integral, singular_integral
from .common import (
    add_output_arguments,
    add_problem_arguments,
    add_truncation_arguments,
    emit,
    make_record,
    resolve_problem,
    resolve_truncation,
    run_guarded,
)

logger = logging.getLogger(__name__)


def _integral(args) -> int:
    problem = resolve_problem(args)
    truncation = resolve_truncation(args).integral
    config = {"problem": problem.to_dict(), "integral": truncation.to_dict(),
              "cross_check": args.cross_check}

    if args.cross_check:
        # raises NumericalDisagreement (exit 5) beyond the combined error bars
        slab, oscillatory = cross_check_integral(
            problem.d,
            problem.m_tilde,
            slab=replace(truncation, method="slab"),
            oscillatory=replace(truncation, method="oscillatory"),
            sigmas=args.sigmas,
            threads=args.threads,
        )
        results = [slab, oscillatory]
    else:
        results = [singular_integral(problem.d, problem.m_tilde, truncation, args.threads)]

    rows = [{"method": r.method, "value": r.value, "standard_error": r.standard_error}
            for r in results]
    text = "\n".join(f"{row['method']:>12}: {row['value']:.8f} +/- {row['standard_error']:.2g}"
                     for row in rows)
    result = {"estimates": [r.to_dict() for r in results]}
    emit(args, make_record("integral", config, result), text=text, rows=rows)
    return 0


def integral_command(args):
    """Execute integral command.

    Returns:
        0 on success, 5 when --cross-check finds the two methods disagree
    """
    return run_guarded(_integral, args)


def setup_parser(subparsers):
    """Setup argument parser for integral command."""
    parser = subparsers.add_parser('integral', help='Singular integral by slab Monte Carlo or oscillatory quadrature')
    add_problem_arguments(parser)
    add_truncation_arguments(parser, method_flags=('--method', '--integral-method'))
    parser.add_argument('--cross-check', action='store_true',
                        help='Run both methods and require agreement')
    parser.add_argument('--sigmas', type=float, default=3.0,
                        help='Tolerance in combined standard errors for --cross-check')
    add_output_arguments(parser)
    parser.set_defaults(func=integral_command)
