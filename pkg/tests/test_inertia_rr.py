from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cfg_line_objects, cfg_par_bundles, cfg_stack_bundles
from orbiroot.geometry import OrbiConfig, VerificationError
from orbiroot.inertia_rr import InertiaModel, chi_inertia, chi_par_three_way, \
    deg_theorem_check, regular_char, sector_values, sectors, trace_at, \
    validate_sector_constants
from orbiroot.parabolic import ParLine, special
from orbiroot.root_stack import LineObject, StackBundle, chi_stack, \
    tensor_stack

CFG1 = OrbiConfig(genus=0, num_points=1, root_index=2)


# ---------------------------------------------------------------- sectors

def test_sector_count():
    cfg = OrbiConfig(genus=0, num_points=3, root_index=4)
    model = InertiaModel(cfg)
    assert len(model.twisted_sectors) == 3 * 3
    assert sectors(CFG1) == ((0, 1),)


def test_trace_primitive_square_root():
    tr = trace_at(CFG1, LineObject(0, (1,)), 0, 1)
    assert abs(tr + 1) < 1e-12


def test_trace_trivial_line():
    cfg = OrbiConfig(genus=0, num_points=2, root_index=5)
    for i, k in sectors(cfg):
        assert abs(trace_at(cfg, LineObject(0, (0, 0)), i, k) - 1) < 1e-12


def test_trace_cancellation():
    Fb = StackBundle((LineObject(0, (0,)), LineObject(0, (1,))))
    assert abs(trace_at(CFG1, Fb, 0, 1)) < 1e-12


def test_trace_rejects_bad_sector():
    with pytest.raises(ValueError, match="sector"):
        trace_at(CFG1, LineObject(0, (0,)), 0, 2)


@given(cfg_line_objects(count=2))
def test_trace_multiplicative_on_lines(data):
    cfg, K1, K2 = data
    prod = tensor_stack(cfg, K1, K2)
    for i, k in sectors(cfg):
        lhs = trace_at(cfg, prod, i, k)
        rhs = trace_at(cfg, K1, i, k) * trace_at(cfg, K2, i, k)
        assert abs(lhs - rhs) < 1e-9


@given(cfg_stack_bundles())
def test_sector_values_modulus_bound(data):
    cfg, Fb = data
    sv = sector_values(cfg, Fb)
    assert sv.rank == Fb.rank
    for _, tr in sv.twisted:
        assert abs(tr) <= Fb.rank + 1e-9


# ---------------------------------------------------------------- regular char

def test_regular_char_values():
    assert abs(regular_char(0, 3) - 3) < 1e-12
    assert abs(regular_char(1, 3)) < 1e-12
    assert abs(regular_char(2, 4)) < 1e-12


def test_regular_char_sweep():
    for r in range(1, 25):
        assert abs(regular_char(0, r) - r) < 1e-12
        for k in range(1, r):
            assert abs(regular_char(k, r)) < 1e-12


# ---------------------------------------------------------------- chi

def test_chi_inertia_half_residue():
    assert chi_inertia(CFG1, LineObject(0, (1,))) == 1


def test_chi_inertia_trivial_line_all_genera():
    for g in (0, 1, 2):
        for r in (1, 2, 3, 5):
            cfg = OrbiConfig(genus=g, num_points=2, root_index=r)
            assert chi_inertia(cfg, LineObject(0, (0, 0))) == 1 - g


def test_chi_inertia_pullback():
    cfg = OrbiConfig(genus=1, num_points=2, root_index=3)
    assert chi_inertia(cfg, LineObject(4, (0, 0))) == 4 + 1 - 1


def test_chi_inertia_tight_tolerance_raises():
    cfg = OrbiConfig(genus=0, num_points=3, root_index=7)
    with pytest.raises(VerificationError):
        chi_inertia(cfg, LineObject(2, (3, 5, 6)), tol=1e-30)


def test_sector_constant_oracle_sweep():
    assert validate_sector_constants(max_r=8) > 0


@given(cfg_stack_bundles(genera=(0, 1, 2)))
@settings(max_examples=150)
def test_chi_inertia_matches_pushforward(data):
    cfg, Fb = data
    assert chi_inertia(cfg, Fb) == chi_stack(cfg, Fb)


@given(cfg_stack_bundles(genera=(0, 1, 2)))
def test_chi_inertia_integrality(data):
    cfg, Fb = data
    assert chi_inertia(cfg, Fb).denominator == 1


# ---------------------------------------------------------------- three-way

def test_three_way_half_weight():
    routes = chi_par_three_way(CFG1, ParLine(0, (F(1, 2),)))
    assert (routes.parabolic, routes.pushforward, routes.inertia) == \
        (F(1, 2), F(1, 2), F(1, 2))


def test_three_way_unmarked():
    for g in (0, 1, 2):
        cfg = OrbiConfig(genus=g, num_points=0, root_index=1)
        routes = chi_par_three_way(cfg, special(cfg, 0))
        assert routes.agree() and routes.parabolic == 1 - g


@given(cfg_par_bundles(genera=(0, 1, 2), max_rank=3, max_abs_d=4))
@settings(max_examples=150)
def test_three_way_agree_random(data):
    cfg, E = data
    assert chi_par_three_way(cfg, E).agree()


# ---------------------------------------------------------------- degrees

def test_deg_theorem_examples():
    cfg = OrbiConfig(genus=0, num_points=2, root_index=2)
    assert deg_theorem_check(cfg, ParLine(-1, (F(1, 2), F(1, 2))))
    assert deg_theorem_check(cfg, special(cfg, 7))


@given(cfg_par_bundles(genera=(0, 1, 2)))
def test_deg_theorem_random(data):
    cfg, E = data
    assert deg_theorem_check(cfg, E)
