"""Tests for orbifold types, the Campana predicate, admissibility, spec files and presets."""

import json
import logging
from fractions import Fraction

import pytest

from campana_count.core.errors import DomainError, SpecFileError
from campana_count.core.orbifold import (
    CampanaOrbifold,
    DiagonalForm,
    OrbifoldWeights,
    ProjPoint,
    bad_primes,
    check_admissible,
    format_admissibility_report,
    fujita_exponent,
    height,
    intersection_multiplicity,
    is_campana_point,
    s0,
    sigma,
)
from campana_count.core.presets import PRESETS, get_preset, list_presets
from campana_count.core.spec_file import load_orbifold, parse_orbifold


def pythagorean_orbifold():
    return CampanaOrbifold.from_lists(1, [1, 1, -1], [2, 2, 2])


class TestTypes:
    """Test cases for construction and validation of the input types."""

    def test_form_validation(self):
        with pytest.raises(DomainError):
            DiagonalForm(0, (1, -1))
        with pytest.raises(DomainError):
            DiagonalForm(2, (1, 0, -1))
        with pytest.raises(DomainError):
            DiagonalForm(2, (2, 4))
        with pytest.raises(DomainError):
            DiagonalForm(2, (1,))

    def test_weights_validation(self):
        """m = 1 is rejected."""
        with pytest.raises(DomainError):
            OrbifoldWeights((2, 1))
        assert OrbifoldWeights((2, 3)).Lambda == 3
        assert OrbifoldWeights((2, 3)).epsilon == (Fraction(1, 2), Fraction(2, 3))

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            CampanaOrbifold.from_lists(2, [1, -1], [2, 2, 2])

    def test_point_validation(self):
        with pytest.raises(DomainError):
            ProjPoint((0, 0, 0))
        with pytest.raises(DomainError):
            ProjPoint((4, 4))
        assert height(ProjPoint((9, -16, 25))) == 25

    def test_evaluate(self):
        assert DiagonalForm(2, (1, 1, -2)).evaluate((1, 1, 1)) == 0
        assert DiagonalForm(1, (1, 1, -1)).evaluate((9, 16, 25)) == 0


class TestCampanaPoints:
    """Test cases for the Campana point predicate."""

    def test_campana_point(self):
        """9 + 16 = 25 with squareful coordinates."""
        assert is_campana_point(ProjPoint((9, 16, 25)), pythagorean_orbifold())

    def test_not_m_full(self):
        """3 + 4 - 7 = 0 but 3 is not squareful."""
        assert not is_campana_point(ProjPoint((3, 4, 7)), pythagorean_orbifold())

    def test_not_on_hypersurface(self):
        assert not is_campana_point(ProjPoint((4, 9, 16)), pythagorean_orbifold())

    def test_on_boundary(self):
        """A zero coordinate lies on the boundary and is not a valid point."""
        with pytest.raises(DomainError, match="boundary"):
            ProjPoint((1, 0, 1))
        with pytest.raises(DomainError, match="boundary"):
            ProjPoint((0, 5, -5))

    def test_exempt_primes(self):
        """With S = {3} the coordinate 3 is allowed."""
        O = pythagorean_orbifold()
        assert is_campana_point(ProjPoint((3, 4, 7)), O, S=[3, 7])

    def test_intersection_multiplicity(self):
        P = ProjPoint((9, 16, 25))
        assert intersection_multiplicity(P, 1, 2) == 4
        assert intersection_multiplicity(P, 0, 3) == 2
        assert intersection_multiplicity(P, 2, 3) == 0
        with pytest.raises(DomainError):
            intersection_multiplicity(P, 3, 2)

    def test_bad_primes(self):
        assert bad_primes(DiagonalForm(2, (1, 1, -2))) == (2,)
        assert bad_primes(DiagonalForm(1, (3, 5, -1))) == (3, 5)
        assert bad_primes(DiagonalForm(1, (1, 1, -1))) == ()

    def test_fujita_exponent(self):
        assert fujita_exponent(pythagorean_orbifold()) == Fraction(1, 2)
        assert fujita_exponent(get_preset("admissible17").to_orbifold()) == Fraction(13, 2)


class TestAdmissibility:
    """Test cases for s0 and the admissibility report."""

    def test_s0_values(self):
        assert s0(2) == 2
        assert s0(3) == 4
        assert s0(4) == 8
        assert sigma(4) == Fraction(1, 16)

    def test_s0_rejects_small_m(self):
        with pytest.raises(DomainError):
            s0(1)

    def test_seventeen_squares_pass(self):
        report = check_admissible(get_preset("admissible17").to_orbifold())
        assert report.theta == Fraction(1, 16)
        assert report.theta_positive
        assert report.in_theorem_range
        assert report.delta_bound == Fraction(1, 740)
        assert all(report.index_inequalities)

    def test_sixteen_squares_fail(self):
        """theta is exactly 0 at the boundary."""
        report = check_admissible(get_preset("borderline16").to_orbifold())
        assert report.theta == 0
        assert not report.in_theorem_range

    def test_three_squares_fail(self):
        report = check_admissible(CampanaOrbifold.from_lists(2, [1, 1, -2], [2, 2, 2]))
        assert report.theta == Fraction(-13, 16)
        assert not report.theta_positive
        assert report.gamma == Fraction(-1, 4)
        assert not report.log_fano
        text = format_admissibility_report(report)
        assert "Verdict: FAIL" in text
        assert "-13/16" in text

    def test_degree_one_outside_range(self):
        report = check_admissible(pythagorean_orbifold())
        assert not report.k_at_least_2
        assert not report.in_theorem_range

    def test_unsorted_input_noted(self):
        report = check_admissible(CampanaOrbifold.from_lists(2, [1, -1, 1], [3, 2, 2]))
        assert not report.input_sorted
        assert report.weights_sorted == (2, 2, 3)
        assert any("reordered" in note for note in report.notes)

    def test_report_dict_uses_exact_fractions(self):
        data = check_admissible(get_preset("admissible17").to_orbifold()).to_dict()
        assert data["theta"] == "1/16"
        assert data["in_theorem_range"] is True
        json.dumps(data)


class TestSpecFile:
    """Test cases for orbifold JSON files."""

    def test_load(self, tmp_path):
        path = tmp_path / "orbifold.json"
        path.write_text(json.dumps({"k": 2, "c": [1, 1, -2], "m": [2, 2, 2]}))
        O = load_orbifold(path)
        assert O.k == 2
        assert O.c == (1, 1, -2)
        assert O.m == (2, 2, 2)

    def test_missing_keys(self):
        with pytest.raises(SpecFileError):
            parse_orbifold({"k": 2, "c": [1, -1]})

    def test_weight_one_rejected(self):
        with pytest.raises(SpecFileError):
            parse_orbifold({"k": 2, "c": [1, -1], "m": [1, 2]})

    def test_non_integer_entries(self):
        with pytest.raises(SpecFileError):
            parse_orbifold({"k": 2, "c": [1, "x"], "m": [2, 2]})
        with pytest.raises(SpecFileError):
            parse_orbifold({"k": True, "c": [1, -1], "m": [2, 2]})

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(SpecFileError):
            load_orbifold(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(SpecFileError):
            load_orbifold(tmp_path / "absent.json")

    def test_unknown_keys_warned(self, caplog):
        with caplog.at_level(logging.WARNING):
            parse_orbifold({"k": 2, "c": [1, -1], "m": [2, 2], "comment": "x"})
        assert "comment" in caplog.text


class TestPresets:
    """Test cases for the preset registry."""

    def test_registry(self):
        assert list_presets() == sorted(PRESETS)
        assert "quadratic7" in list_presets()

    def test_quadratic7(self):
        preset = get_preset("quadratic7")
        assert preset.d == (1, 1, 1, 1, -1, -1, -1)
        assert preset.m_tilde == (2,) * 7
        assert preset.zeta == (1,) * 7

    def test_unknown_preset(self):
        with pytest.raises(DomainError):
            get_preset("nonexistent")

    def test_presets_build(self):
        for name in list_presets():
            O = get_preset(name).to_orbifold()
            assert len(O.c) == len(O.m)
