"""Session and graded-module input files.

A session file is a JSON document with a ``config`` record and a ``bundles``
map from names to summand lists; a summand record with a ``weights`` field is
parabolic, one with a ``res`` field lives on the stack.  Weights are exact
fraction strings whose denominator divides the configured root index;
decimals are rejected.  Rationals are always emitted as exact ``p/q`` strings
in lowest terms (plain integers when the denominator is 1) so that emitted
documents parse back bit-identically.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .geometry import OrbiConfig, validate_config
from .local_model import GradedModule, LocalRing, parse_poly
from .parabolic import ParBundle, ParLine, check_par_line
from .root_stack import LineObject, StackBundle, normalize

_FRACTION_RE = re.compile(r"^-?\d+(/\d+)?$")


def format_fraction(x) -> str:
    return str(Fraction(x))


def parse_fraction(text: str) -> Fraction:
    if not isinstance(text, str) or not _FRACTION_RE.match(text.strip()):
        raise ValueError(f"expected an exact fraction string, got {text!r}")
    return Fraction(text.strip())


def parse_weight(cfg: OrbiConfig, text) -> Fraction:
    """Parse one parabolic weight: 'a/b' with b dividing r, value in [0,1)."""
    w = parse_fraction(text)
    if (cfg.root_index * w).denominator != 1:
        raise ValueError(f"weight {text!r} has denominator not dividing "
                         f"r={cfg.root_index}")
    if not 0 <= w < 1:
        raise ValueError(f"weight {text!r} must lie in [0, 1)")
    return w


@dataclass(frozen=True)
class SessionFile:
    config: OrbiConfig
    bundles: dict


def _parse_par_summand(cfg: OrbiConfig, rec: dict, name: str) -> ParLine:
    d = rec.get("d")
    if not isinstance(d, int) or isinstance(d, bool):
        raise ValueError(f"bundle {name!r}: summand degree d must be an integer")
    ws = rec.get("weights")
    if not isinstance(ws, list) or len(ws) != cfg.num_points:
        raise ValueError(f"bundle {name!r}: weights must list one entry per "
                         f"marked point ({cfg.num_points})")
    L = ParLine(d, tuple(parse_weight(cfg, w) for w in ws))
    check_par_line(cfg, L)
    return L


def _parse_stack_summand(cfg: OrbiConfig, rec: dict, name: str) -> LineObject:
    d = rec.get("d")
    if not isinstance(d, int) or isinstance(d, bool):
        raise ValueError(f"bundle {name!r}: summand degree d must be an integer")
    res = rec.get("res")
    if not isinstance(res, list) or len(res) != cfg.num_points or \
            not all(isinstance(x, int) and not isinstance(x, bool) for x in res):
        raise ValueError(f"bundle {name!r}: res must list one integer per "
                         f"marked point ({cfg.num_points})")
    return normalize(cfg, d, res)


def parse_bundle(cfg: OrbiConfig, records, name: str):
    if not isinstance(records, list) or not records:
        raise ValueError(f"bundle {name!r} must be a nonempty list of summands")
    kinds = set()
    for rec in records:
        if not isinstance(rec, dict):
            raise ValueError(f"bundle {name!r}: summands must be records")
        if "weights" in rec and "res" in rec:
            raise ValueError(f"bundle {name!r}: summand has both weights and res")
        kinds.add("par" if "weights" in rec else
                  "stack" if "res" in rec else "?")
    if kinds == {"par"}:
        return ParBundle(tuple(_parse_par_summand(cfg, r, name)
                               for r in records))
    if kinds == {"stack"}:
        return StackBundle(tuple(_parse_stack_summand(cfg, r, name)
                                 for r in records))
    raise ValueError(f"bundle {name!r}: summands must all carry 'weights' "
                     "(parabolic) or all carry 'res' (stack)")


def parse_session(doc: dict) -> SessionFile:
    if not isinstance(doc, dict) or "config" not in doc:
        raise ValueError("session document must contain a 'config' record")
    cfg = validate_config(doc["config"])
    bundles = {}
    raw = doc.get("bundles", {})
    if not isinstance(raw, dict):
        raise ValueError("'bundles' must map names to summand lists")
    for name, records in raw.items():
        bundles[name] = parse_bundle(cfg, records, name)
    return SessionFile(cfg, bundles)


def load_session(path: str) -> SessionFile:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"session file {path}: {exc}") from exc
    return parse_session(doc)


def bundle_to_records(cfg: OrbiConfig, bundle):
    if isinstance(bundle, ParBundle):
        return [{"d": L.d, "weights": [format_fraction(w) for w in L.weights]}
                for L in bundle.summands]
    if isinstance(bundle, StackBundle):
        return [{"d": K.d, "res": list(K.res)} for K in bundle.summands]
    raise TypeError(f"cannot serialize {type(bundle).__name__}")


def load_graded_module(path: str) -> GradedModule:
    """Read a graded module file: {r, N, ambient_degrees, matrix} with the
    matrix given as rows of polynomial strings in t."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"module file {path}: {exc}") from exc
    for name in ("r", "ambient_degrees", "matrix"):
        if name not in doc:
            raise ValueError(f"module file missing field {name!r}")
    r = doc["r"]
    if not isinstance(r, int) or r < 1:
        raise ValueError("r must be a positive integer")
    N = doc.get("N", 4 * r)
    ring = LocalRing(r, N)
    amb = doc["ambient_degrees"]
    rows = doc["matrix"]
    n = len(amb)
    if not isinstance(rows, list) or len(rows) != n or \
            any(not isinstance(row, list) or len(row) != n for row in rows):
        raise ValueError("matrix must be square with one row per ambient "
                         "degree")
    entries = [[parse_poly(str(cell)) for cell in row] for row in rows]
    columns = tuple(tuple(entries[i][j] for i in range(n)) for j in range(n))
    return GradedModule(ring, tuple(amb), columns)
