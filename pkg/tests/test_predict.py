"""Tests for main-term predictions, leading constants and comparisons."""

import math
from fractions import Fraction

import pytest

from campana_count.circle.integral import IntegralTruncation, singular_integral
from campana_count.circle.predict import (
    ComparisonRow,
    DiagonalProblem,
    Truncation,
    cap_ladder,
    compare,
    fit_exponent,
    format_comparison,
    format_constant_estimate,
    format_prediction,
    leading_constant,
    leading_constant_full,
    predict_M,
    rescale_prediction,
)
from campana_count.circle.series import SeriesTruncation, singular_series
from campana_count.core.budget import Budget
from campana_count.core.errors import DomainError
from campana_count.core.orbifold import CampanaOrbifold
from campana_count.core.presets import get_preset

QUADRATIC7 = get_preset("quadratic7")
TERNARY = get_preset("ternary")


@pytest.fixture
def fast():
    return Truncation(
        series=SeriesTruncation(q_max=60),
        integral=IntegralTruncation(samples=200_000, shards=8),
        r_cap=4,
    )


def quadratic7_problem():
    return DiagonalProblem(QUADRATIC7.d, QUADRATIC7.zeta, QUADRATIC7.m_tilde)


class TestDiagonalProblem:
    """Test cases for the exponent bookkeeping of a diagonal problem."""

    def test_quadratic7(self):
        problem = quadratic7_problem()
        assert problem.gamma_tilde == Fraction(5, 2)
        assert problem.theta_tilde == Fraction(3, 4)
        assert problem.outside_theorem is False

    def test_ternary_outside(self):
        problem = DiagonalProblem(TERNARY.d, TERNARY.zeta, TERNARY.m_tilde)
        assert problem.outside_theorem is True

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            DiagonalProblem((1, -1), (1,), (2, 2))


class TestPredictM:
    """Test cases for predict_M."""

    def test_main_term_is_product(self, fast):
        prediction = predict_M(QUADRATIC7.d, QUADRATIC7.zeta, QUADRATIC7.m_tilde, 256, fast)
        expected = (
            prediction.series_value
            * prediction.integral_value
            * prediction.zeta_factor
            * 256**2.5
        )
        assert prediction.main_term == pytest.approx(expected)
        assert prediction.zeta_factor == 1.0
        assert prediction.main_term > 0
        assert prediction.uncertainty >= 0

    def test_zeta_factor(self, fast):
        prediction = predict_M((1, 1, 1, 1, -1, -1, -1), (4, 1, 1, 1, 1, 1, 9), (2,) * 7, 100, fast)
        assert prediction.zeta_factor == pytest.approx(4**-0.5 * 9**-0.5)

    def test_deterministic(self, fast):
        first = predict_M(QUADRATIC7.d, QUADRATIC7.zeta, QUADRATIC7.m_tilde, 128, fast)
        second = predict_M(QUADRATIC7.d, QUADRATIC7.zeta, QUADRATIC7.m_tilde, 128, fast)
        assert first.to_dict() == second.to_dict()

    def test_rescale(self, fast):
        prediction = predict_M(QUADRATIC7.d, QUADRATIC7.zeta, QUADRATIC7.m_tilde, 100, fast)
        doubled = rescale_prediction(prediction, 200)
        assert doubled.main_term == pytest.approx(prediction.main_term * 2**2.5)
        assert doubled.B_tilde == 200.0

    def test_bad_height(self, fast):
        with pytest.raises(DomainError):
            predict_M(QUADRATIC7.d, QUADRATIC7.zeta, QUADRATIC7.m_tilde, 0, fast)

    def test_format(self, fast):
        prediction = predict_M(QUADRATIC7.d, QUADRATIC7.zeta, QUADRATIC7.m_tilde, 64, fast)
        text = format_prediction(prediction)
        assert "MAIN TERM PREDICTION" in text
        assert "WARNING" not in text


class TestLeadingConstant:
    """Test cases for the truncated leading constant."""

    def test_cap_ladder(self):
        assert cap_ladder(1) == [1]
        assert cap_ladder(16) == [1, 2, 4, 8, 16]
        assert cap_ladder(12) == [1, 2, 4, 8, 12]
        with pytest.raises(DomainError):
            cap_ladder(0)

    def test_cap_one_is_integral_times_series(self, fast):
        """Only the trivial (s, t) pair has weight 1."""
        O = QUADRATIC7.to_orbifold()
        truncation = Truncation(series=fast.series, integral=fast.integral, r_cap=1)
        estimate = leading_constant(O.c, O, truncation)
        J = singular_integral(O.c, QUADRATIC7.m_tilde, fast.integral).value
        S = singular_series(O.c, QUADRATIC7.zeta, QUADRATIC7.m_tilde, fast.series).value
        assert estimate.value == pytest.approx(J * S)
        assert estimate.partial_sums == [(1, estimate.value)]
        assert estimate.deltas == []
        assert estimate.terms == 1

    def test_definite_is_zero(self, fast):
        O = CampanaOrbifold.from_lists(1, (1, 1, 1, 1, 1, 1, 1), (2,) * 7)
        estimate = leading_constant(O.c, O, fast)
        assert estimate.value == 0.0
        assert all(value == 0.0 for _, value in estimate.partial_sums)

    def test_partial_sums_follow_ladder(self, fast):
        O = QUADRATIC7.to_orbifold()
        estimate = leading_constant(O.c, O, fast)
        assert [cap for cap, _ in estimate.partial_sums] == [1, 2, 4]
        assert estimate.value == estimate.partial_sums[-1][1]
        assert len(estimate.deltas) == 2
        assert "LEADING CONSTANT" in format_constant_estimate(estimate)

    def test_odd_k_sign_flip_invariant(self, fast):
        truncation = Truncation(
            series=SeriesTruncation(q_max=30), integral=fast.integral, r_cap=2
        )
        O = TERNARY.to_orbifold()
        flipped = CampanaOrbifold.from_lists(1, tuple(-c for c in TERNARY.c), TERNARY.m)
        first = leading_constant_full(O, truncation)
        second = leading_constant_full(flipped, truncation)
        assert first.value == pytest.approx(second.value, rel=1e-9)


class TestCompare:
    """Test cases for exact-versus-predicted tables."""

    def test_fit_exponent(self):
        rows = [ComparisonRow(B=B, exact=B * B, predicted=1.0) for B in (10, 20, 40)]
        assert fit_exponent(rows) == pytest.approx(2.0)
        assert fit_exponent(rows[:1]) is None

    def test_diagonal(self, fast):
        table = compare(quadratic7_problem(), [256, 64, 128], fast)
        assert table.kind == "diagonal"
        assert [row.B for row in table.rows] == [64, 128, 256]
        assert all(row.exact > 0 and row.ratio > 0 for row in table.rows)
        assert table.expected_exponent == Fraction(5, 2)
        assert math.isfinite(table.fitted_exponent)
        assert "EXACT vs PREDICTED" in format_comparison(table)

    def test_budget_exceeded_row(self, fast, caplog):
        budget = Budget(max_candidates=5000, max_operations=10**9, max_dense_cells=1)
        table = compare(quadratic7_problem(), [64, 128], fast, budget=budget)
        assert table.rows[0].status == "ok"
        assert table.rows[1].status == "budget-exceeded"
        assert table.rows[1].exact is None
        assert table.rows[1].ratio is None
        assert table.fitted_exponent is None
        assert "Skipping" in caplog.text

    def test_orbifold(self, fast):
        truncation = Truncation(series=SeriesTruncation(q_max=30), integral=fast.integral, r_cap=2)
        table = compare(TERNARY.to_orbifold(), [50, 100], truncation)
        assert table.kind == "orbifold"
        assert table.expected_exponent == Fraction(1, 2)
        assert table.outside_theorem is True
        assert all(row.exact is not None and row.exact >= 0 for row in table.rows)

    def test_empty_grid(self, fast):
        with pytest.raises(DomainError):
            compare(quadratic7_problem(), [], fast)

    @pytest.mark.slow
    def test_quadratic7_acceptance(self):
        truncation = Truncation(integral=IntegralTruncation(samples=2_000_000))
        table = compare(quadratic7_problem(), [2**10, 2**11, 2**12, 2**13], truncation)
        assert table.fitted_exponent == pytest.approx(2.5, abs=0.05)
        row = next(row for row in table.rows if row.B == 2**12)
        assert row.ratio == pytest.approx(1.0, abs=0.15)
