"""Resource caps for exact enumeration.

Budget goals:
- Bounded: every exact count checks its candidate and operation totals first
- Explicit: exceeding a cap raises BudgetExceeded instead of running away
- Tunable: caps can be adjusted globally or overridden per call
"""

from dataclasses import dataclass, replace
from typing import Dict, Optional

from .errors import BudgetExceeded


# Default caps (tunable via adjust_budget or the CLI --budget-* flags)
BUDGET: Dict[str, int] = {
    # Entries stored on the dictionary side of a meet-in-the-middle split
    "max_candidates": 20_000_000,
    # Tuples visited on the probe side / full scans
    "max_operations": 2_000_000_000,
    # Histogram cells backed by a dense numpy array
    "max_dense_cells": 1 << 27,
}


@dataclass(frozen=True)
class Budget:
    """Snapshot of the resource caps applied to one computation."""

    max_candidates: int
    max_operations: int
    max_dense_cells: int

    def check_candidates(self, needed: int, what: str = "candidates") -> None:
        if needed > self.max_candidates:
            raise BudgetExceeded(
                f"{what}: {needed} entries exceed max_candidates={self.max_candidates}",
                needed=needed,
                cap=self.max_candidates,
            )

    def check_operations(self, needed: int, what: str = "operations") -> None:
        if needed > self.max_operations:
            raise BudgetExceeded(
                f"{what}: {needed} steps exceed max_operations={self.max_operations}",
                needed=needed,
                cap=self.max_operations,
            )

    def with_caps(self, **caps: Optional[int]) -> "Budget":
        """Return a copy with the non-None caps replaced."""
        return replace(self, **{k: v for k, v in caps.items() if v is not None})


def get_budget(budget: Optional[Budget] = None) -> Budget:
    """Return the explicit budget, or a snapshot of the module defaults."""
    if budget is not None:
        return budget
    return Budget(**BUDGET)


def adjust_budget(**caps: int) -> None:
    """Update default caps (cap name -> value)."""
    unknown = set(caps) - set(BUDGET)
    if unknown:
        raise KeyError(f"Unknown budget caps: {sorted(unknown)}")
    for name, value in caps.items():
        if value <= 0:
            raise ValueError(f"Budget cap {name} must be positive, got {value}")
    BUDGET.update(caps)
