"""Exact solution counts."""

from .engine import (
    METHODS,
    SolutionCount,
    assemble_N,
    count_campana,
    count_N,
    count_N_d,
    count_N_star,
    sign_patterns,
)
from .histogram import box_length, count_M, count_M_scan, count_zero_sums, split_balanced

__all__ = [
    "METHODS",
    "SolutionCount",
    "assemble_N",
    "count_campana",
    "count_N",
    "count_N_d",
    "count_N_star",
    "sign_patterns",
    "box_length",
    "count_M",
    "count_M_scan",
    "count_zero_sums",
    "split_balanced",
]
