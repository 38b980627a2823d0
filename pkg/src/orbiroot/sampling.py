"""Seeded random generators for configurations, bundles and graded modules.

Everything takes an explicit ``random.Random`` so that the self-test driver
and the acceptance suite are reproducible from a single seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .geometry import OrbiConfig
from .local_model import GradedModule, LocalRing, poly_add, poly_scale, \
    poly_shift
from .parabolic import ParBundle, ParLine
from .root_stack import LineObject, StackBundle


def random_config(rng: random.Random, max_r: int = 6, max_m: int = 4,
                  genera=(0,)) -> OrbiConfig:
    return OrbiConfig(genus=rng.choice(genera),
                      num_points=rng.randint(0 if 0 in genera else 1, max_m),
                      root_index=rng.randint(1, max_r))


def random_marked_config(rng: random.Random, max_r: int = 6, max_m: int = 4,
                         genera=(0,)) -> OrbiConfig:
    return OrbiConfig(genus=rng.choice(genera),
                      num_points=rng.randint(1, max_m),
                      root_index=rng.randint(1, max_r))


def random_par_line(rng: random.Random, cfg: OrbiConfig,
                    max_abs_d: int = 10) -> ParLine:
    return ParLine(rng.randint(-max_abs_d, max_abs_d),
                   tuple(Fraction(rng.randrange(cfg.root_index),
                                  cfg.root_index)
                         for _ in range(cfg.num_points)))


def random_par_bundle(rng: random.Random, cfg: OrbiConfig,
                      max_abs_d: int = 10, max_rank: int = 5) -> ParBundle:
    rank = rng.randint(1, max_rank)
    return ParBundle(tuple(random_par_line(rng, cfg, max_abs_d)
                           for _ in range(rank)))


def random_line_object(rng: random.Random, cfg: OrbiConfig,
                       max_abs_d: int = 10) -> LineObject:
    return LineObject(rng.randint(-max_abs_d, max_abs_d),
                      tuple(rng.randrange(cfg.root_index)
                            for _ in range(cfg.num_points)))


def random_stack_bundle(rng: random.Random, cfg: OrbiConfig,
                        max_abs_d: int = 10, max_rank: int = 5) -> StackBundle:
    rank = rng.randint(1, max_rank)
    return StackBundle(tuple(random_line_object(rng, cfg, max_abs_d)
                             for _ in range(rank)))


def random_finite_line(rng: random.Random, cfg: OrbiConfig) -> LineObject:
    """A random torsion line object: residues summing to 0 mod r."""
    r, m = cfg.root_index, cfg.num_points
    if m == 0:
        return LineObject(0, ())
    while True:
        res = tuple(rng.randrange(r) for _ in range(m))
        if sum(res) % r == 0:
            return LineObject(-(sum(res) // r), res)


def random_finite_bundle(rng: random.Random, cfg: OrbiConfig,
                         max_rank: int = 5) -> StackBundle:
    rank = rng.randint(1, max_rank)
    return StackBundle(tuple(random_finite_line(rng, cfg)
                             for _ in range(rank)))


def random_nonfinite_bundle(rng: random.Random, cfg: OrbiConfig,
                            max_abs_d: int = 3,
                            max_rank: int = 3) -> StackBundle:
    """A bundle guaranteed to contain a summand of nonzero degree."""
    while True:
        F = random_stack_bundle(rng, cfg, max_abs_d, max_rank)
        from .root_stack import deg_stack
        if any(deg_stack(cfg, K) != 0 for K in F.summands):
            return F


# ----------------------------------------------------------------------
# planted graded modules
# ----------------------------------------------------------------------

def planted_graded_module(rng: random.Random, r: int, shifts,
                          precision: int | None = None) -> GradedModule:
    """A module that decomposes into the given shifts: permuted monomial
    columns over random ambient degrees."""
    ring = LocalRing(r, precision if precision is not None else 4 * r)
    n = len(shifts)
    amb = tuple(rng.randrange(r) for _ in range(n))
    rows = list(range(n))
    rng.shuffle(rows)
    zero = ()
    cols = []
    for j, s in enumerate(shifts):
        i = rows[j]
        e = (s - amb[i]) % r
        col = [zero] * n
        col[i] = poly_shift((Fraction(1),), e, ring.precision)
        cols.append(tuple(col))
    return GradedModule(ring, amb, tuple(cols))


_SCALARS = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2),
            Fraction(3), Fraction(-2))


def random_basis_change(rng: random.Random, M: GradedModule,
                        ops: int = 8) -> GradedModule:
    """Apply random homogeneous invertible column operations.

    Column degrees are preserved: scaling by a nonzero rational, and adding
    a homogeneous multiple of another column (its degree adjusted by a
    t-power in the right residue class, optionally a full period deeper).
    """
    from .local_model import column_degrees
    r, N = M.ring.root_index, M.ring.precision
    degs = column_degrees(M)
    cols = [list(col) for col in M.columns]
    n = len(cols)
    for _ in range(ops):
        k = rng.randrange(n)
        if n > 1 and rng.random() < 0.7:
            j = rng.choice([i for i in range(n) if i != k])
            e = (degs[k] - degs[j]) % r + r * rng.randint(0, 1)
            c = rng.choice(_SCALARS)
            for i in range(n):
                cols[k][i] = poly_add(
                    cols[k][i],
                    poly_scale(c, poly_shift(cols[j][i], e, N)))
        else:
            c = rng.choice([s for s in _SCALARS if s != 0])
            for i in range(n):
                cols[k][i] = poly_scale(c, cols[k][i])
    return GradedModule(M.ring, M.ambient,
                        tuple(tuple(col) for col in cols))
