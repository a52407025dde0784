"""CLI command for the truncated singular series."""

import logging

from ..circle.series import singular_series
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


def format_series(result) -> str:
    lines = []
    lines.append("=" * 50)
    lines.append("SINGULAR SERIES")
    lines.append("=" * 50)
    lines.append(f"Mode:   {result.mode}")
    lines.append(f"Value:  {result.value:.10f}")
    lines.append(f"Tail:   {result.tail_estimate:.2g}")
    lines.append(f"Terms:  {result.terms}")
    for p, factor in sorted(result.local_factors.items())[:10]:
        lines.append(f"  p = {p:>4}: {factor:.8f}")
    if result.outside_theorem:
        lines.append("WARNING: outside the main-term regime")
    lines.append("=" * 50)
    return "\n".join(lines)


def _series(args) -> int:
    problem = resolve_problem(args)
    truncation = resolve_truncation(args)
    result = singular_series(problem.d, problem.zeta, problem.m_tilde, truncation.series, args.threads)
    logger.debug(f"Singular series ({result.mode}) = {result.value:.10f}")
    config = {"problem": problem.to_dict(), "series": truncation.series.to_dict()}
    emit(args, make_record("series", config, result.to_dict()), text=format_series(result))
    return 0


def series_command(args):
    """Execute series command."""
    return run_guarded(_series, args)


def setup_parser(subparsers):
    """Setup argument parser for series command."""
    parser = subparsers.add_parser('series', help='Truncated singular series (q-sum or Euler product)')
    add_problem_arguments(parser)
    add_truncation_arguments(parser, mode_flags=('--mode', '--series-mode'))
    add_output_arguments(parser)
    parser.set_defaults(func=series_command)
