"""CLI command for the circle-method main term of a diagonal problem."""

import logging

from ..circle.predict import format_prediction, predict_M
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


def _predict(args) -> int:
    problem = resolve_problem(args)
    truncation = resolve_truncation(args)
    prediction = predict_M(problem.d, problem.zeta, problem.m_tilde, args.B, truncation, args.threads)
    logger.debug(f"Predicted main term {prediction.main_term:.6g} at B~={args.B}")
    config = {
        "problem": problem.to_dict(),
        "B_tilde": args.B,
        "truncation": truncation.to_dict(),
    }
    emit(args, make_record("predict", config, prediction.to_dict()), text=format_prediction(prediction))
    return 0


def predict_command(args):
    """Execute predict command.

    Returns:
        0 on success, 3 on inputs outside the series' convergence range
    """
    return run_guarded(_predict, args)


def setup_parser(subparsers):
    """Setup argument parser for predict command."""
    parser = subparsers.add_parser('predict', help='Main term S * J * B~^Gamma~ for M_{d,zeta}(B~)')
    add_problem_arguments(parser)
    parser.add_argument('--B', type=float, required=True, help='Height B~')
    add_truncation_arguments(parser)
    add_output_arguments(parser)
    parser.set_defaults(func=predict_command)
