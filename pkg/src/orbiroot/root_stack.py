"""Split line bundles on the r-th root stack of the marked divisor.

The Picard lattice is modelled as Z (pullback degree) x (Z/r)^m, one
tautological root class per marked point, subject to the carry relation
``r * N_i = (degree-1 pullback class)``.  A :class:`LineObject` is the
canonical representative ``(d, res)`` with residues in ``0..r-1``; multiset
equality of canonical forms is the isomorphism test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import OrbiConfig, chi_line_on_base


@dataclass(frozen=True)
class LineObject:
    d: int
    res: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "res", tuple(int(x) for x in self.res))


@dataclass(frozen=True)
class StackBundle:
    summands: tuple[LineObject, ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.summands, key=lambda k: (k.d, k.res)))
        object.__setattr__(self, "summands", ordered)

    @property
    def rank(self) -> int:
        return len(self.summands)


def check_line_object(cfg: OrbiConfig, K: LineObject) -> None:
    if len(K.res) != cfg.num_points:
        raise ValueError(f"line object has {len(K.res)} residues, "
                         f"config has {cfg.num_points} marked points")
    if any(not (0 <= x < cfg.root_index) for x in K.res):
        raise ValueError(f"residues {K.res} not in canonical range "
                         f"0..{cfg.root_index - 1}")


def normalize(cfg: OrbiConfig, d: int, raw_res) -> LineObject:
    """Canonical form: reduce residues mod r, carrying quotients into d."""
    r = cfg.root_index
    res = []
    for x in raw_res:
        d += x // r
        res.append(x % r)
    if len(res) != cfg.num_points:
        raise ValueError("residue list length does not match num_points")
    return LineObject(d, tuple(res))


def taut_root_power(cfg: OrbiConfig, l: int) -> LineObject:
    """The l-th power of the tautological root of O(D), in canonical form."""
    return normalize(cfg, 0, [l] * cfg.num_points)


def deg_stack(cfg: OrbiConfig, obj) -> Fraction:
    if isinstance(obj, StackBundle):
        return sum((deg_stack(cfg, K) for K in obj.summands), Fraction(0))
    check_line_object(cfg, obj)
    return obj.d + Fraction(sum(obj.res), cfg.root_index)


def tensor_stack(cfg: OrbiConfig, a, b):
    """Tensor product: componentwise addition with carries.

    Line x line gives a line; bundle x bundle gives the full multiset of
    pairwise products.
    """
    if isinstance(a, LineObject) and isinstance(b, LineObject):
        check_line_object(cfg, a)
        check_line_object(cfg, b)
        return normalize(cfg, a.d + b.d,
                         [x + y for x, y in zip(a.res, b.res)])
    fa = a if isinstance(a, StackBundle) else StackBundle((a,))
    fb = b if isinstance(b, StackBundle) else StackBundle((b,))
    return StackBundle(tuple(tensor_stack(cfg, ka, kb)
                             for ka in fa.summands for kb in fb.summands))


def dual_stack(cfg: OrbiConfig, K: LineObject) -> LineObject:
    check_line_object(cfg, K)
    return normalize(cfg, -K.d, [-x for x in K.res])


def pushforward_degree(cfg: OrbiConfig, K: LineObject) -> int:
    """Degree of the pushforward to the base curve.

    Canonical residues lie in 0..r-1, so only the pullback degree survives.
    """
    check_line_object(cfg, K)
    return K.d


def pushforward_twisted_degree(cfg: OrbiConfig, K: LineObject, l: int) -> int:
    """Degree of the pushforward after twisting down by the l-th root power."""
    check_line_object(cfg, K)
    r = cfg.root_index
    return K.d + sum((x - l) // r for x in K.res)


def chi_stack(cfg: OrbiConfig, obj) -> int:
    """Euler characteristic, computed through the (exact) pushforward."""
    if isinstance(obj, StackBundle):
        return sum(chi_stack(cfg, K) for K in obj.summands)
    return chi_line_on_base(cfg, pushforward_degree(cfg, obj))


def hom_nonzero(cfg: OrbiConfig, K1: LineObject, K2: LineObject) -> bool:
    """Whether a nonzero map K1 -> K2 exists (genus 0 only).

    The canonical sections realize every residue step, so existence reduces
    to the pushforward of K2 (x) K1^dual having a global section.
    """
    if cfg.genus != 0:
        raise ValueError("hom_nonzero requires genus 0")
    quot = tensor_stack(cfg, K2, dual_stack(cfg, K1))
    return pushforward_degree(cfg, quot) >= 0
