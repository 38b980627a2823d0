"""Ambient configuration: a marked curve with a root index.

Everything downstream is computed relative to one :class:`OrbiConfig`: a
smooth projective curve of genus ``g``, a reduced divisor of ``m`` distinct
marked points, an integer root index ``r >= 1`` and a very ample reference
class of degree ``h``.  Line bundles on the base curve are represented by
their degree alone, which keeps every invariant exact and closed-form; as a
consequence the operations that decide existence of morphisms are restricted
to genus 0, where the degree determines the bundle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class VerificationError(RuntimeError):
    """A cross-checked identity failed.  Never expected on valid input."""


@dataclass(frozen=True)
class OrbiConfig:
    genus: int
    num_points: int
    root_index: int
    point_labels: tuple[str, ...] = ()
    polarization_degree: int = 1

    def __post_init__(self):
        if not self.point_labels:
            object.__setattr__(
                self, "point_labels",
                tuple(f"P{i + 1}" for i in range(self.num_points)))
        if self.genus < 0:
            raise ValueError("genus must be >= 0")
        if self.num_points < 0:
            raise ValueError("num_points must be >= 0")
        if self.root_index < 1:
            raise ValueError("root_index must be >= 1")
        if self.polarization_degree < 1:
            raise ValueError("polarization_degree must be >= 1")
        if len(self.point_labels) != self.num_points:
            raise ValueError("point_labels must have num_points entries")
        if len(set(self.point_labels)) != len(self.point_labels):
            raise ValueError("duplicate point label")

    @property
    def r(self) -> int:
        return self.root_index

    @property
    def m(self) -> int:
        return self.num_points


@dataclass(frozen=True)
class WeightIndex:
    """An element l/r of the weight lattice of a given configuration."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError("denominator must be >= 1")

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


def as_weight_step(cfg: OrbiConfig, t) -> Fraction:
    """Coerce t (int, Fraction or WeightIndex) to an exact multiple of 1/r."""
    if isinstance(t, WeightIndex):
        if t.denominator != cfg.root_index:
            raise ValueError("WeightIndex denominator does not match config "
                             f"root_index {cfg.root_index}")
        t = t.value
    t = Fraction(t)
    if (cfg.root_index * t).denominator != 1:
        raise ValueError(f"denominator of {t} does not divide r={cfg.root_index}")
    return t


def chi_line_on_base(cfg: OrbiConfig, d: int) -> int:
    """Euler characteristic of a degree-d line bundle on the base curve."""
    return d + 1 - cfg.genus


def validate_config(raw: dict) -> OrbiConfig:
    """Build an OrbiConfig from a parsed record, reporting offending fields."""
    if not isinstance(raw, dict):
        raise ValueError("config record must be a mapping")
    known = {"genus", "num_points", "root_index", "point_labels",
             "polarization_degree"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config field(s): {sorted(unknown)}")
    for name in ("genus", "num_points", "root_index"):
        if name not in raw:
            raise ValueError(f"missing config field: {name}")
        if not isinstance(raw[name], int) or isinstance(raw[name], bool):
            raise ValueError(f"{name} must be an integer")
    if raw["root_index"] < 1:
        raise ValueError("root_index must be >= 1")
    if raw["genus"] < 0:
        raise ValueError("genus must be >= 0")
    if raw["num_points"] < 0:
        raise ValueError("num_points must be >= 0")
    labels = raw.get("point_labels")
    if labels is None:
        labels = [f"P{i + 1}" for i in range(raw["num_points"])]
    if not isinstance(labels, (list, tuple)) or \
            not all(isinstance(s, str) for s in labels):
        raise ValueError("point_labels must be a list of strings")
    if len(labels) != raw["num_points"]:
        raise ValueError("point_labels must have num_points entries")
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate point label")
    h = raw.get("polarization_degree", 1)
    if not isinstance(h, int) or isinstance(h, bool) or h < 1:
        raise ValueError("polarization_degree must be a positive integer")
    return OrbiConfig(genus=raw["genus"], num_points=raw["num_points"],
                      root_index=raw["root_index"],
                      point_labels=tuple(labels), polarization_degree=h)
