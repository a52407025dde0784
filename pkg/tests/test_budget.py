"""Tests for resource caps."""

import pytest

from campana_count.core.budget import BUDGET, Budget, adjust_budget, get_budget
from campana_count.core.errors import BudgetExceeded


@pytest.fixture
def restore_budget():
    saved = dict(BUDGET)
    yield
    BUDGET.clear()
    BUDGET.update(saved)


class TestBudget:
    """Test cases for Budget snapshots and adjust_budget."""

    def test_defaults(self):
        budget = get_budget()
        assert budget.max_candidates == BUDGET["max_candidates"]
        assert budget.max_dense_cells == 1 << 27

    def test_explicit_budget_wins(self):
        explicit = Budget(max_candidates=5, max_operations=10, max_dense_cells=100)
        assert get_budget(explicit) is explicit

    def test_with_caps_ignores_none(self):
        budget = get_budget().with_caps(max_candidates=7, max_operations=None)
        assert budget.max_candidates == 7
        assert budget.max_operations == BUDGET["max_operations"]

    def test_checks_raise(self):
        budget = Budget(max_candidates=5, max_operations=10, max_dense_cells=100)
        budget.check_candidates(5)
        with pytest.raises(BudgetExceeded) as excinfo:
            budget.check_candidates(6, "table")
        assert excinfo.value.needed == 6
        assert excinfo.value.cap == 5
        with pytest.raises(BudgetExceeded):
            budget.check_operations(11)

    def test_adjust_budget(self, restore_budget):
        adjust_budget(max_candidates=1234)
        assert get_budget().max_candidates == 1234

    def test_adjust_budget_unknown_cap(self, restore_budget):
        with pytest.raises(KeyError):
            adjust_budget(max_memory=1)

    def test_adjust_budget_rejects_nonpositive(self, restore_budget):
        with pytest.raises(ValueError):
            adjust_budget(max_operations=0)
