import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbiroot.geometry import OrbiConfig, WeightIndex, as_weight_step, \
    chi_line_on_base, validate_config


def test_chi_structure_sheaf_on_line():
    cfg = OrbiConfig(genus=0, num_points=0, root_index=1)
    assert chi_line_on_base(cfg, 0) == 1
    assert chi_line_on_base(cfg, -1) == 0


def test_chi_genus_two():
    cfg = OrbiConfig(genus=2, num_points=0, root_index=1)
    assert chi_line_on_base(cfg, 3) == 2


@given(st.integers(0, 5), st.integers(-50, 50))
def test_chi_increasing_with_unit_increments(g, d):
    cfg = OrbiConfig(genus=g, num_points=0, root_index=1)
    assert chi_line_on_base(cfg, d + 1) == chi_line_on_base(cfg, d) + 1


@given(st.integers(0, 5))
def test_chi_at_zero(g):
    cfg = OrbiConfig(genus=g, num_points=0, root_index=1)
    assert chi_line_on_base(cfg, 0) == 1 - g


def test_validate_config_accepts_marked_line():
    cfg = validate_config({"genus": 0, "num_points": 3, "root_index": 2,
                           "point_labels": ["0", "1", "inf"]})
    assert cfg.root_index == 2
    assert cfg.point_labels == ("0", "1", "inf")
    assert cfg.polarization_degree == 1


def test_validate_config_rejects_zero_root_index():
    with pytest.raises(ValueError, match="root_index"):
        validate_config({"genus": 0, "num_points": 1, "root_index": 0,
                         "point_labels": ["p"]})


def test_validate_config_rejects_duplicate_labels():
    with pytest.raises(ValueError, match="duplicate point label"):
        validate_config({"genus": 0, "num_points": 2, "root_index": 2,
                         "point_labels": ["p", "p"]})


def test_validate_config_rejects_negative_genus():
    with pytest.raises(ValueError, match="genus"):
        validate_config({"genus": -1, "num_points": 0, "root_index": 1})


def test_validate_config_reports_unknown_fields():
    with pytest.raises(ValueError, match="unknown config field"):
        validate_config({"genus": 0, "num_points": 0, "root_index": 1,
                         "weights": []})


def test_default_labels_are_distinct():
    cfg = OrbiConfig(genus=0, num_points=4, root_index=3)
    assert len(set(cfg.point_labels)) == 4


def test_weight_index_coercion():
    cfg = OrbiConfig(genus=0, num_points=1, root_index=4)
    from fractions import Fraction
    assert as_weight_step(cfg, WeightIndex(3, 4)) == Fraction(3, 4)
    assert as_weight_step(cfg, Fraction(1, 2)) == Fraction(1, 2)
    assert as_weight_step(cfg, 2) == 2
    with pytest.raises(ValueError, match="does not divide"):
        as_weight_step(cfg, Fraction(1, 3))
    with pytest.raises(ValueError, match="denominator"):
        as_weight_step(cfg, WeightIndex(1, 3))
