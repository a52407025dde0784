"""CLI command for exact point counts."""

import logging
import time
from dataclasses import asdict

from ..counting.engine import count_campana, count_N, count_N_star
from ..counting.histogram import count_M
from .common import (
    add_budget_arguments,
    add_parallel_arguments,
    add_output_arguments,
    add_problem_arguments,
    emit,
    make_record,
    resolve_budget,
    resolve_orbifold,
    resolve_problem,
    run_guarded,
)

logger = logging.getLogger(__name__)

COUNT_MODES = ("campana", "regular", "N", "Nstar", "M")


def _count(args) -> int:
    budget = resolve_budget(args)
    config = {"mode": args.mode, "B": args.B, "method": args.method, "budget": asdict(budget)}
    started = time.perf_counter()
    if args.threads > 1:
        logger.debug(f"Exact counts run in one worker; ignoring --threads {args.threads}")

    if args.mode == "M":
        problem = resolve_problem(args)
        config["problem"] = problem.to_dict()
        value = count_M(problem.d, problem.zeta, problem.m_tilde, args.B, budget)
        method = "histogram-convolution"
    else:
        orbifold = resolve_orbifold(args)
        config["orbifold"] = orbifold.to_dict()
        if args.mode in ("campana", "regular"):
            model = "proper" if args.mode == "campana" else "regular"
            value = count_campana(orbifold, args.B, model=model, budget=budget)
        elif args.mode == "N":
            value = count_N(orbifold, args.B, method=args.method, budget=budget).count
        else:
            value = count_N_star(orbifold.c, orbifold.weights, orbifold.k, args.B,
                                 method=args.method, budget=budget)
        method = args.method

    result = {"count": value, "B": args.B, "mode": args.mode, "method": method}
    if not args.no_timing:
        result["elapsed"] = round(time.perf_counter() - started, 6)
    logger.debug(f"count {args.mode} at B={args.B}: {value}")

    emit(args, make_record("count", config, result),
         text=f"{args.mode}(B={args.B}) = {value}  [{method}]")
    return 0


def count_command(args):
    """Execute count command.

    Returns:
        0 on success, 4 when the exact count would exceed the budget
    """
    return run_guarded(_count, args)


def setup_parser(subparsers):
    """Setup argument parser for count command."""
    parser = subparsers.add_parser('count', help='Exact count of points of bounded height')
    add_problem_arguments(parser)
    parser.add_argument('--mode', choices=COUNT_MODES, default='campana',
                        help='campana/regular: points on the proper/regular model; N: signed '
                             'primitive solutions; Nstar: positive primitive; M: diagonal problem')
    parser.add_argument('--B', type=int, required=True, help='Height bound (B~ for mode M)')
    parser.add_argument('--method', choices=['meet-in-the-middle', 'full-scan'],
                        default='meet-in-the-middle', help='Enumeration strategy')
    parser.add_argument('--no-timing', action='store_true',
                        help='Leave elapsed time out of the record (byte-stable output)')
    add_budget_arguments(parser)
    add_parallel_arguments(parser)
    add_output_arguments(parser)
    parser.set_defaults(func=count_command)
