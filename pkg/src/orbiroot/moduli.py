"""Slopes, semistability and Nori finiteness on the orbifold projective line.

Everything here is genus 0: the degree-only Picard model is exact there, and
for split bundles the slope conditions reduce to comparisons of summand
degrees.  A line object is torsion exactly when its degree vanishes (its
r-th power is the pullback of a degree r*deg class), so a split bundle is
finite exactly when every summand has degree zero; the witness search makes
that decidable cross-check concrete by producing an explicit polynomial
relation P(F) ~ Q(F) and verifying it by direct multiset evaluation.

The minimal degree of such a relation equals the number of distinct
character sums of the summand classes (the powers of the class sum are
linearly independent below it, by a Vandermonde argument on the distinct
eigenvalues), so the search evaluates all characters exactly in cyclotomic
integer arithmetic, builds the minimal polynomial of the class sum, and
splits it into the nonnegative parts P and Q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .geometry import OrbiConfig, VerificationError
from .root_stack import LineObject, StackBundle, check_line_object, \
    deg_stack, hom_nonzero, tensor_stack


def _as_bundle(obj) -> StackBundle:
    return obj if isinstance(obj, StackBundle) else StackBundle((obj,))


def _require_genus0(cfg: OrbiConfig, what: str) -> None:
    if cfg.genus != 0:
        raise ValueError(f"{what} requires genus 0")


def slope(cfg: OrbiConfig, F) -> Fraction:
    F = _as_bundle(F)
    if F.rank == 0:
        raise ValueError("slope of an empty bundle")
    return deg_stack(cfg, F) / F.rank


def is_semistable(cfg: OrbiConfig, F) -> bool:
    """Semistability of a split bundle: all summand degrees equal.

    On the orbifold line the maximal-slope line sub-bundle of a split bundle
    is one of the summands, so equality of summand slopes is equivalent to
    the sub-bundle slope condition.
    """
    _require_genus0(cfg, "is_semistable")
    F = _as_bundle(F)
    if F.rank == 0:
        raise ValueError("semistability of an empty bundle")
    degs = {deg_stack(cfg, K) for K in F.summands}
    return len(degs) == 1


def max_line_sub_degree(cfg: OrbiConfig, F) -> Fraction:
    """Largest degree of a line sub-bundle: the best summand."""
    _require_genus0(cfg, "max_line_sub_degree")
    F = _as_bundle(F)
    if F.rank == 0:
        raise ValueError("empty bundle has no line sub-bundles")
    return max(deg_stack(cfg, K) for K in F.summands)


def saturation(cfg: OrbiConfig, K_sub: LineObject, F, j: int) -> LineObject:
    """Smallest sub-bundle of F containing a line subsheaf mapped into
    summand j.  Summands are already saturated, so this is the summand; the
    inclusion has torsion cokernel and can only raise the degree."""
    _require_genus0(cfg, "saturation")
    F = _as_bundle(F)
    if not 0 <= j < F.rank:
        raise ValueError(f"summand index {j} out of range for rank {F.rank}")
    target = F.summands[j]
    if not hom_nonzero(cfg, K_sub, target):
        raise ValueError(f"no nonzero map {K_sub} -> summand {j}")
    return target


def is_finite(cfg: OrbiConfig, F) -> bool:
    """Finiteness of a split bundle: every summand torsion, i.e. degree 0."""
    _require_genus0(cfg, "is_finite")
    F = _as_bundle(F)
    return all(deg_stack(cfg, K) == 0 for K in F.summands)


# ----------------------------------------------------------------------
# witness polynomials
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessRelation:
    """Distinct polynomials with P(F) isomorphic to Q(F), plus the evidence:
    the (equal) evaluated multisets, as sorted (class, multiplicity) pairs."""

    p_coeffs: tuple[int, ...]
    q_coeffs: tuple[int, ...]
    evaluation: tuple[tuple[LineObject, int], ...]

    def __post_init__(self):
        if self.p_coeffs == self.q_coeffs:
            raise ValueError("witness polynomials must be distinct")
        if any(c < 0 for c in self.p_coeffs + self.q_coeffs):
            raise ValueError("witness coefficients must be nonnegative")


def format_witness_poly(coeffs) -> str:
    parts = []
    for n in range(len(coeffs) - 1, -1, -1):
        c = coeffs[n]
        if c == 0:
            continue
        if n == 0:
            parts.append(str(c))
        else:
            x = "X" if n == 1 else f"X^{n}"
            parts.append(x if c == 1 else f"{c}*{x}")
    return " + ".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def _cyclotomic(r: int) -> tuple[int, ...]:
    # X^r - 1 divided by the cyclotomic polynomials of the proper divisors
    num = [-1] + [0] * (r - 1) + [1]
    for d in range(1, r):
        if r % d == 0:
            num = _polydiv_exact(num, list(_cyclotomic(d)))
    return tuple(num)


def _polydiv_exact(num, den):
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        q[i] = c
        for j, y in enumerate(den):
            num[i + j] -= c * y
    if any(v != 0 for v in num):
        raise ArithmeticError("inexact polynomial division")
    return q


def _cyc_reduce(coeffs, phi) -> tuple[int, ...]:
    # canonical representative modulo the (monic) cyclotomic polynomial
    c = list(coeffs)
    d = len(phi) - 1
    for i in range(len(c) - 1, d - 1, -1):
        f = c[i]
        if f:
            for j in range(len(phi)):
                c[i - d + j] -= f * phi[j]
    c = c[:d] + [0] * (d - len(c))
    return tuple(c[:d])


def _cyc_mul(a, b, phi) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _cyc_reduce(out, phi)


def _eigenvalue_set(cfg: OrbiConfig, F: StackBundle):
    """Distinct character sums of the summand classes, as exact cyclotomic
    integers (count vector of residue exponents, reduced)."""
    r, m = cfg.root_index, cfg.num_points
    phi = list(_cyclotomic(r))
    seen = set()
    for w in itertools.product(range(r), repeat=m):
        counts = [0] * r
        for K in F.summands:
            e = sum(wi * xi for wi, xi in zip(w, K.res)) % r
            counts[e] += 1
        seen.add(_cyc_reduce(counts, phi))
    return sorted(seen), phi


def _power_multisets(cfg: OrbiConfig, F: StackBundle, top: int):
    """Multisets of the tensor powers F^(x)0..top as class-count dicts."""
    powers = [{LineObject(0, (0,) * cfg.num_points): 1}]
    for _ in range(top):
        prev = powers[-1]
        nxt: dict[LineObject, int] = {}
        for K, count in prev.items():
            for S in F.summands:
                prod = tensor_stack(cfg, K, S)
                nxt[prod] = nxt.get(prod, 0) + count
        powers.append(nxt)
    return powers


def evaluate_polynomial(cfg: OrbiConfig, coeffs, F) -> dict[LineObject, int]:
    """Multiset of P(F) as a class -> multiplicity dictionary."""
    F = _as_bundle(F)
    powers = _power_multisets(cfg, F, len(coeffs) - 1)
    out: dict[LineObject, int] = {}
    for n, c in enumerate(coeffs):
        if c:
            for K, count in powers[n].items():
                out[K] = out.get(K, 0) + c * count
    return out


def witness_polynomials(cfg: OrbiConfig, F, degree_bound: int):
    """Search for distinct P, Q with nonnegative integer coefficients and
    P(F) isomorphic to Q(F), up to the given degree.

    Returns a verified :class:`WitnessRelation`, or None when no relation of
    degree <= degree_bound exists.  A summand of nonzero degree rules out
    relations of every degree (the top- or bottom-degree part of the power
    multisets grows strictly), so only torsion bundles are searched; for
    those, the minimal relation is the minimal polynomial of the summand
    class sum in the group algebra of the classes, with degree the number of
    distinct character sums.
    """
    _require_genus0(cfg, "witness_polynomials")
    if degree_bound < 1:
        raise ValueError("degree_bound must be >= 1")
    F = _as_bundle(F)
    if F.rank == 0:
        raise ValueError("witness search needs a nonempty bundle")
    for K in F.summands:
        check_line_object(cfg, K)
    if not is_finite(cfg, F):
        return None

    eigenvalues, phi = _eigenvalue_set(cfg, F)
    s = len(eigenvalues)
    if s > degree_bound:
        return None

    # minimal polynomial of the class sum: product of (X - lambda) over the
    # distinct character sums, expanded in cyclotomic integer arithmetic
    width = len(phi) - 1
    one = _cyc_reduce([1], phi)
    zero = (0,) * width
    poly = [one]
    for lam in eigenvalues:
        neg = tuple(-v for v in lam)
        nxt = [zero] * (len(poly) + 1)
        for i, coef in enumerate(poly):
            nxt[i + 1] = tuple(a + b for a, b in zip(nxt[i + 1], coef))
            prod = _cyc_mul(coef, neg, phi)
            nxt[i] = tuple(a + b for a, b in zip(nxt[i], prod))
        poly = nxt
    coeffs = []
    for coef in poly:
        if any(v != 0 for v in coef[1:]):
            raise VerificationError(
                "minimal polynomial has an irrational coefficient; the "
                "eigenvalue set cannot be Galois stable")
        coeffs.append(coef[0])

    p = tuple(max(c, 0) for c in coeffs)
    q = tuple(max(-c, 0) for c in coeffs)
    left = evaluate_polynomial(cfg, p, F)
    right = evaluate_polynomial(cfg, q, F)
    if left != right:
        raise VerificationError(
            "witness relation failed direct multiset evaluation")
    evidence = tuple(sorted(left.items(), key=lambda kv: (kv[0].d, kv[0].res)))
    return WitnessRelation(p, q, evidence)


# ----------------------------------------------------------------------
# classification of finite line objects
# ----------------------------------------------------------------------

def enumerate_finite_lines(cfg: OrbiConfig) -> tuple[LineObject, ...]:
    """All degree-0 line objects in canonical form, sorted by (d, res)."""
    _require_genus0(cfg, "enumerate_finite_lines")
    r, m = cfg.root_index, cfg.num_points
    if m == 0:
        return (LineObject(0, ()),)
    out = []
    for res in itertools.product(range(r), repeat=m):
        total = sum(res)
        if total % r == 0:
            out.append(LineObject(-(total // r), res))
    return tuple(sorted(out, key=lambda K: (K.d, K.res)))


@dataclass(frozen=True)
class StructureReport:
    count: int
    expected_count: int
    min_degree: int
    max_degree: int


def verify_structure_theorem(cfg: OrbiConfig) -> StructureReport:
    """Enumerate the finite line objects and assert -m < d <= 0 on each."""
    _require_genus0(cfg, "verify_structure_theorem")
    if cfg.num_points < 1:
        raise ValueError("structure theorem sweep needs at least one point")
    lines = enumerate_finite_lines(cfg)
    m = cfg.num_points
    for K in lines:
        if not -m < K.d <= 0:
            raise VerificationError(
                f"finite line object {K} violates the degree bounds "
                f"-{m} < d <= 0")
    expected = cfg.root_index ** (m - 1)
    if len(lines) != expected:
        raise VerificationError(
            f"enumerated {len(lines)} finite line objects, expected "
            f"{expected}")
    return StructureReport(len(lines), expected,
                           min(K.d for K in lines), max(K.d for K in lines))
