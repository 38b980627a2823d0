import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cfg_stack_bundles
from orbiroot.geometry import OrbiConfig
from orbiroot.moduli import enumerate_finite_lines, evaluate_polynomial, \
    format_witness_poly, is_finite, is_semistable, max_line_sub_degree, \
    saturation, slope, verify_structure_theorem, witness_polynomials
from orbiroot.root_stack import LineObject, StackBundle, deg_stack, \
    hom_nonzero
from orbiroot.sampling import random_finite_bundle

CFG1 = OrbiConfig(genus=0, num_points=1, root_index=2)
CFG22 = OrbiConfig(genus=0, num_points=2, root_index=2)


# ---------------------------------------------------------------- slopes

def test_slope_examples():
    assert slope(CFG22, StackBundle((LineObject(-1, (1, 1)),))) == 0
    trivial3 = StackBundle((LineObject(0, (0,)),) * 3)
    assert slope(CFG1, trivial3) == 0
    mixed = StackBundle((LineObject(0, (0,)), LineObject(1, (0,))))
    assert slope(CFG1, mixed) == F(1, 2)


def test_slope_rejects_empty():
    with pytest.raises(ValueError, match="empty"):
        slope(CFG1, StackBundle(()))


def test_semistable_examples():
    K = LineObject(-1, (1,))
    assert is_semistable(CFG1, StackBundle((K, K)))
    assert not is_semistable(CFG1, StackBundle((LineObject(0, (0,)),
                                                LineObject(-1, (1,)))))
    half = StackBundle((LineObject(-1, (1,)), LineObject(-1, (1,))))
    assert is_semistable(CFG1, half)


def test_semistable_requires_genus_zero():
    cfg = OrbiConfig(genus=1, num_points=1, root_index=2)
    with pytest.raises(ValueError, match="genus 0"):
        is_semistable(cfg, StackBundle((LineObject(0, (0,)),)))


def test_max_line_sub_degree_examples():
    Fb = StackBundle((LineObject(0, (0,)), LineObject(-1, (1,))))
    assert max_line_sub_degree(CFG1, Fb) == 0
    single = StackBundle((LineObject(2, (1,)),))
    assert max_line_sub_degree(CFG1, single) == deg_stack(CFG1, single)


def test_max_line_sub_degree_bounds_mapped_lines():
    for r in (1, 2, 3):
        cfg = OrbiConfig(genus=0, num_points=2, root_index=r)
        Fb = StackBundle((LineObject(0, (0,) * 2),
                          LineObject(-1, (r - 1, r - 1))))
        best = max_line_sub_degree(cfg, Fb)
        for d in range(-3, 4):
            for res in itertools.product(range(r), repeat=2):
                K = LineObject(d, res)
                if any(hom_nonzero(cfg, K, S) for S in Fb.summands):
                    assert deg_stack(cfg, K) <= best


# ---------------------------------------------------------------- saturation

def test_saturation_returns_summand():
    Fb = StackBundle((LineObject(-1, (1,)), LineObject(2, (0,))))
    K = LineObject(-1, (0,))
    j = 0
    assert saturation(CFG1, K, Fb, j) == Fb.summands[j]
    assert deg_stack(CFG1, K) <= deg_stack(CFG1, saturation(CFG1, K, Fb, j))


def test_saturation_of_summand_is_itself():
    Fb = StackBundle((LineObject(-1, (1,)),))
    assert saturation(CFG1, Fb.summands[0], Fb, 0) == Fb.summands[0]


def test_saturation_needs_nonzero_map():
    Fb = StackBundle((LineObject(-3, (1,)),))
    with pytest.raises(ValueError, match="no nonzero map"):
        saturation(CFG1, LineObject(5, (0,)), Fb, 0)


@given(cfg_stack_bundles(max_abs_d=3, max_rank=3), st.integers(-3, 3),
       st.integers(0, 2))
def test_saturation_degree_inequality(data, d, j):
    cfg, Fb = data
    j %= Fb.rank
    K = LineObject(d, tuple(0 for _ in range(cfg.num_points)))
    if hom_nonzero(cfg, K, Fb.summands[j]):
        sat = saturation(cfg, K, Fb, j)
        assert deg_stack(cfg, K) <= deg_stack(cfg, sat)


# ---------------------------------------------------------------- finiteness

def test_is_finite_examples():
    assert is_finite(CFG22, StackBundle((LineObject(-1, (1, 1)),)))
    assert is_finite(CFG1, StackBundle((LineObject(0, (0,)),) * 2))
    assert not is_finite(CFG1, StackBundle((LineObject(0, (1,)),)))


def test_witness_square_relation():
    Fb = StackBundle((LineObject(-1, (1, 1)),))
    rel = witness_polynomials(CFG22, Fb, 6)
    assert rel.p_coeffs == (0, 0, 1)      # X^2
    assert rel.q_coeffs == (1, 0, 0)      # 1
    assert format_witness_poly(rel.p_coeffs) == "X^2"
    assert format_witness_poly(rel.q_coeffs) == "1"


def test_witness_trivial_line():
    rel = witness_polynomials(CFG1, StackBundle((LineObject(0, (0,)),)), 3)
    assert rel.p_coeffs == (0, 1) and rel.q_coeffs == (1, 0)


def test_witness_degree_obstruction():
    assert witness_polynomials(CFG1, StackBundle((LineObject(0, (1,)),)),
                               6) is None


def test_witness_rejects_bad_bound():
    with pytest.raises(ValueError, match="degree_bound"):
        witness_polynomials(CFG1, StackBundle((LineObject(0, (0,)),)), 0)


def test_witness_relation_evaluates_equal():
    cfg = OrbiConfig(genus=0, num_points=3, root_index=3)
    rng = random.Random(9)
    for _ in range(20):
        Fb = random_finite_bundle(rng, cfg, max_rank=3)
        rel = witness_polynomials(cfg, Fb, cfg.root_index ** Fb.rank + 2)
        assert rel is not None
        assert evaluate_polynomial(cfg, rel.p_coeffs, Fb) == \
            evaluate_polynomial(cfg, rel.q_coeffs, Fb)
        assert rel.p_coeffs != rel.q_coeffs


def test_witness_minimal_degree_can_exceed_linear_bounds():
    # two independent order-5 classes: the 15 distinct character sums force
    # relation degree 15, so a bound of 14 must come back empty
    cfg = OrbiConfig(genus=0, num_points=3, root_index=5)
    Fb = StackBundle((LineObject(-1, (1, 4, 0)), LineObject(-1, (0, 1, 4))))
    assert witness_polynomials(cfg, Fb, 14) is None
    rel = witness_polynomials(cfg, Fb, 15)
    assert rel is not None and len(rel.p_coeffs) == 16


def test_witness_isotypic_bundles_have_small_relations():
    # rank many copies of one order-r class: relation degree is the order
    cfg = OrbiConfig(genus=0, num_points=2, root_index=4)
    K = LineObject(-1, (1, 3))
    Fb = StackBundle((K, K, K))
    rel = witness_polynomials(cfg, Fb, 4)
    assert rel is not None


# ---------------------------------------------------------------- enumeration

def test_enumerate_r2_m3():
    cfg = OrbiConfig(genus=0, num_points=3, root_index=2)
    lines = enumerate_finite_lines(cfg)
    assert set(lines) == {
        LineObject(0, (0, 0, 0)), LineObject(-1, (1, 1, 0)),
        LineObject(-1, (1, 0, 1)), LineObject(-1, (0, 1, 1))}


def test_enumerate_unmarked():
    cfg = OrbiConfig(genus=0, num_points=0, root_index=3)
    assert enumerate_finite_lines(cfg) == (LineObject(0, ()),)


def test_enumerate_r3_m2():
    cfg = OrbiConfig(genus=0, num_points=2, root_index=3)
    lines = enumerate_finite_lines(cfg)
    assert len(lines) == 3
    assert all(deg_stack(cfg, K) == 0 for K in lines)


def test_structure_theorem_r2_m3():
    cfg = OrbiConfig(genus=0, num_points=3, root_index=2)
    report = verify_structure_theorem(cfg)
    assert report.count == 4
    assert report.min_degree == -1 and report.max_degree == 0


def test_structure_theorem_single_point():
    cfg = OrbiConfig(genus=0, num_points=1, root_index=2)
    report = verify_structure_theorem(cfg)
    assert report.count == 1
    assert report.min_degree == report.max_degree == 0


def test_structure_theorem_r6_m4():
    cfg = OrbiConfig(genus=0, num_points=4, root_index=6)
    report = verify_structure_theorem(cfg)
    assert report.count == 6 ** 3
    assert report.min_degree == -3


def test_finite_implies_semistable_degree_zero():
    for r in range(1, 5):
        for m in range(1, 4):
            cfg = OrbiConfig(genus=0, num_points=m, root_index=r)
            for K in enumerate_finite_lines(cfg):
                assert is_semistable(cfg, K)
                assert deg_stack(cfg, K) == 0
