"""Shared hypothesis strategies: a configuration plus data living on it."""

from fractions import Fraction

import hypothesis.strategies as st

from orbiroot.geometry import OrbiConfig
from orbiroot.parabolic import ParBundle, ParLine
from orbiroot.root_stack import LineObject, StackBundle


@st.composite
def configs(draw, max_r=6, max_m=4, min_m=1, genera=(0,)):
    return OrbiConfig(genus=draw(st.sampled_from(genera)),
                      num_points=draw(st.integers(min_m, max_m)),
                      root_index=draw(st.integers(1, max_r)))


def _par_line(draw, cfg, max_abs_d):
    d = draw(st.integers(-max_abs_d, max_abs_d))
    ws = tuple(Fraction(draw(st.integers(0, cfg.root_index - 1)),
                        cfg.root_index)
               for _ in range(cfg.num_points))
    return ParLine(d, ws)


def _line_object(draw, cfg, max_abs_d):
    d = draw(st.integers(-max_abs_d, max_abs_d))
    res = tuple(draw(st.integers(0, cfg.root_index - 1))
                for _ in range(cfg.num_points))
    return LineObject(d, res)


@st.composite
def cfg_par_lines(draw, max_abs_d=5, count=1, **cfg_kwargs):
    cfg = draw(configs(**cfg_kwargs))
    lines = tuple(_par_line(draw, cfg, max_abs_d) for _ in range(count))
    return (cfg, *lines)


@st.composite
def cfg_par_bundles(draw, max_abs_d=5, max_rank=4, count=1, **cfg_kwargs):
    cfg = draw(configs(**cfg_kwargs))
    bundles = tuple(
        ParBundle(tuple(_par_line(draw, cfg, max_abs_d)
                        for _ in range(draw(st.integers(1, max_rank)))))
        for _ in range(count))
    return (cfg, *bundles)


@st.composite
def cfg_line_objects(draw, max_abs_d=5, count=1, **cfg_kwargs):
    cfg = draw(configs(**cfg_kwargs))
    lines = tuple(_line_object(draw, cfg, max_abs_d) for _ in range(count))
    return (cfg, *lines)


@st.composite
def cfg_stack_bundles(draw, max_abs_d=5, max_rank=4, count=1, **cfg_kwargs):
    cfg = draw(configs(**cfg_kwargs))
    bundles = tuple(
        StackBundle(tuple(_line_object(draw, cfg, max_abs_d)
                          for _ in range(draw(st.integers(1, max_rank)))))
        for _ in range(count))
    return (cfg, *bundles)
