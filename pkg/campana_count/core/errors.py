"""Exception hierarchy shared by every layer.

Library code raises these; only the CLI turns them into exit codes:
- DomainError: 3
- BudgetExceeded: 4
- NumericalDisagreement: 5
- SpecFileError: 2 (usage)
"""

from typing import Optional


class CampanaError(Exception):
    """Base class for all campana_count errors."""


class DomainError(CampanaError, ValueError):
    """Input outside the mathematical domain of an operation.

    Attributes:
        witness: optional prime (or other value) demonstrating the failure,
            e.g. the prime p with p | x but p^m not dividing x.
    """

    def __init__(self, message: str, witness: Optional[int] = None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(CampanaError, RuntimeError):
    """An exact computation would exceed the configured resource caps."""

    def __init__(self, message: str, needed: Optional[int] = None, cap: Optional[int] = None):
        super().__init__(message)
        self.needed = needed
        self.cap = cap


class NumericalDisagreement(CampanaError, ArithmeticError):
    """Two independent evaluations disagree beyond tolerance."""


class SpecFileError(CampanaError, ValueError):
    """Orbifold specification file failed validation."""
