"""CLI command for the unique decomposition of an m-full integer."""

import logging

from ..core.arith import m_full_decompose
from .common import add_output_arguments, emit, make_record, run_guarded

logger = logging.getLogger(__name__)


def _decompose(args) -> int:
    decomposition = m_full_decompose(args.x, args.m)
    logger.debug(f"Decomposed {args.x} with m={args.m}")
    result = {
        "x": args.x,
        "sign": decomposition.sign,
        "u": decomposition.u,
        "v": list(decomposition.v),
        "m": decomposition.m,
    }
    text = (
        f"sign={decomposition.sign:+d} u={decomposition.u} v={list(decomposition.v)}"
    )
    emit(args, make_record("decompose", {"x": args.x, "m": args.m}, result), text=text)
    return 0


def decompose_command(args):
    """Execute decompose command.

    Returns:
        0 on success, 3 if x is not m-full (the witnessing prime is named)
    """
    return run_guarded(_decompose, args)


def setup_parser(subparsers):
    """Setup argument parser for decompose command."""
    parser = subparsers.add_parser('decompose', help='Write an m-full integer as sign * u^m * prod v_r^(m+r)')
    parser.add_argument('x', type=int, help='Nonzero m-full integer')
    parser.add_argument('--m', type=int, required=True, help='Fullness parameter m >= 1')
    add_output_arguments(parser, default='text')
    parser.set_defaults(func=decompose_command)
