"""Seeded self-test battery tying the verification suites together.

Each suite draws its own samples from one ``random.Random`` seeded by the
caller, so a fixed seed reproduces the identical run.  Suites return a
failure count and a short detail string; the driver formats one line per
suite and an overall verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import inertia_rr, local_model, moduli, sampling
from .correspondence import coend_evaluate, coend_term, to_parabolic, \
    to_stack, tensor_compat_check
from .geometry import OrbiConfig
from .parabolic import deg_par, filtration_degree, hom_exists_par, \
    tensor_par, tensor_par_coend_degree
from .root_stack import deg_stack, hom_nonzero


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checked: int
    failures: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _suite_roundtrip(rng, samples):
    bad = 0
    for _ in range(samples):
        cfg = sampling.random_marked_config(rng)
        E = sampling.random_par_bundle(rng, cfg)
        if to_parabolic(cfg, to_stack(cfg, E)) != E:
            bad += 1
        F = sampling.random_stack_bundle(rng, cfg)
        if to_stack(cfg, to_parabolic(cfg, F)) != F:
            bad += 1
    return SuiteResult("correspondence round-trip", 2 * samples, bad)


def _suite_coend(rng, samples):
    bad = 0
    for _ in range(samples):
        cfg = sampling.random_marked_config(rng)
        L = sampling.random_par_line(rng, cfg, max_abs_d=3)
        if coend_evaluate(cfg, L) != to_stack(cfg, L):
            bad += 1
        # widening the window must not change the per-point minima
        r = cfg.root_index
        narrow = [min(coend_term(cfg, L, l).orders[i] for l in range(r))
                  for i in range(cfg.num_points)]
        wide = [min(coend_term(cfg, L, l).orders[i] for l in range(-r, 2 * r))
                for i in range(cfg.num_points)]
        if narrow != wide:
            bad += 1
    return SuiteResult("coend oracle", 2 * samples, bad)


def _suite_tensor(rng, samples):
    bad = 0
    for _ in range(samples):
        cfg = sampling.random_marked_config(rng)
        A = sampling.random_par_bundle(rng, cfg, max_rank=3)
        B = sampling.random_par_bundle(rng, cfg, max_rank=3)
        if not tensor_compat_check(cfg, A, B):
            bad += 1
        La = sampling.random_par_line(rng, cfg, max_abs_d=3)
        Lb = sampling.random_par_line(rng, cfg, max_abs_d=3)
        l = rng.randint(-2 * cfg.root_index, 2 * cfg.root_index)
        closed = filtration_degree(cfg, tensor_par(cfg, La, Lb).summands[0],
                                   Fraction(l, cfg.root_index))
        if tensor_par_coend_degree(cfg, La, Lb, l) != closed:
            bad += 1
        da, db = deg_par(A), deg_par(B)
        if deg_par(tensor_par(cfg, A, B)) != A.rank * db + B.rank * da:
            bad += 1
    return SuiteResult("tensor compatibility", 3 * samples, bad)


def _suite_degree_theorem(rng, samples):
    bad = 0
    for _ in range(samples):
        cfg = sampling.random_marked_config(rng)
        E = sampling.random_par_bundle(rng, cfg)
        if not inertia_rr.deg_theorem_check(cfg, E):
            bad += 1
    return SuiteResult("degree theorem", samples, bad)


def _suite_chi_three_way(rng, samples, tol):
    bad = 0
    for _ in range(samples):
        cfg = sampling.random_marked_config(rng, genera=(0, 1, 2))
        E = sampling.random_par_bundle(rng, cfg, max_abs_d=4, max_rank=3)
        if not inertia_rr.chi_par_three_way(cfg, E, tol=tol).agree():
            bad += 1
    return SuiteResult("Euler characteristic three-way", samples, bad)


def _suite_hom(rng, samples):
    bad = 0
    for _ in range(samples):
        cfg = sampling.random_marked_config(rng)
        A = sampling.random_par_line(rng, cfg, max_abs_d=3)
        B = sampling.random_par_line(rng, cfg, max_abs_d=3)
        hom_exists_par(cfg, A, B)   # asserts the two criteria agree
        K1 = sampling.random_line_object(rng, cfg, max_abs_d=3)
        K2 = sampling.random_line_object(rng, cfg, max_abs_d=3)
        if hom_nonzero(cfg, K1, K2) and \
                deg_stack(cfg, K1) > deg_stack(cfg, K2):
            bad += 1
    return SuiteResult("Hom criteria and degree inequality", 2 * samples, bad)


def _suite_witness(rng, samples):
    bad = 0
    n = max(1, samples // 4)
    for _ in range(n):
        cfg = sampling.random_marked_config(rng)
        F = sampling.random_finite_bundle(rng, cfg, max_rank=3)
        bound = cfg.root_index ** F.rank + 2
        rel = moduli.witness_polynomials(cfg, F, bound)
        if rel is None:
            bad += 1
        G = sampling.random_nonfinite_bundle(rng, cfg)
        if moduli.witness_polynomials(cfg, G, 6) is not None:
            bad += 1
    return SuiteResult("finiteness witnesses", 2 * n, bad)


def _suite_structure(rng, samples):
    bad = 0
    checked = 0
    for r in range(1, 7):
        for m in range(1, 5):
            cfg = OrbiConfig(genus=0, num_points=m, root_index=r)
            report = moduli.verify_structure_theorem(cfg)
            checked += report.count
            for K in moduli.enumerate_finite_lines(cfg):
                if not (moduli.is_semistable(cfg, K)
                        and deg_stack(cfg, K) == 0):
                    bad += 1
    return SuiteResult("finite structure theorem", checked, bad,
                       "r<=6, m<=4 exhaustive")


def _suite_local(rng, samples):
    bad = 0
    n = max(1, samples // 4)
    for _ in range(n):
        r = rng.randint(1, 4)
        rank = rng.randint(1, 4)
        shifts = tuple(sorted(rng.randrange(r) for _ in range(rank)))
        M = sampling.random_basis_change(
            rng, sampling.planted_graded_module(rng, r, shifts),
            ops=rng.randint(2, 10))
        if local_model.decompose_shifts(M) != shifts:
            bad += 1
        if local_model.invariant_part_rank(M).rank != rank:
            bad += 1
    return SuiteResult("local shift decomposition", 2 * n, bad)


def _suite_sectors(rng, samples):
    checked = inertia_rr.validate_sector_constants(max_r=8)
    bad = 0
    for r in range(1, 25):
        for k in range(1, r):
            if abs(inertia_rr.regular_char(k, r)) >= 1e-12:
                bad += 1
            checked += 1
    return SuiteResult("inertia sector constants", checked, bad,
                       "pushforward oracle sweep r<=8")


def run_selftest(samples: int = 200, seed: int = 0, tol=None):
    """Run every suite; returns (all_ok, list of SuiteResult)."""
    rng = random.Random(seed)
    results = [
        _suite_roundtrip(rng, samples),
        _suite_coend(rng, samples),
        _suite_tensor(rng, samples),
        _suite_degree_theorem(rng, samples),
        _suite_chi_three_way(rng, samples, tol),
        _suite_hom(rng, samples),
        _suite_witness(rng, samples),
        _suite_structure(rng, samples),
        _suite_local(rng, samples),
        _suite_sectors(rng, samples),
    ]
    return all(r.ok for r in results), results
