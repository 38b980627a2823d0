"""The equivalence between parabolic bundles and bundles on the root stack.

Two mutually inverse translations:

* ``to_parabolic`` sends a line object ``(d, res)`` to the parabolic line of
  degree ``d`` with weights ``res_i / r`` — the twisted-pushforward functor,
  asserted summand by summand against the pushforward degree formula.
* ``to_stack`` is the inverse closed form: weight -> residue ``r * alpha_i``.

``coend_evaluate`` recomputes ``to_stack`` on a single parabolic line as an
actual colimit of line subsheaves: for each index in one period it records
the vanishing orders of the corresponding twisted pullback inside a common
ambient bundle, and takes the per-point minimum.  It exists purely as the
independent oracle for the closed form; the production path never calls it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .geometry import OrbiConfig, VerificationError
from .parabolic import ParBundle, ParLine, as_par_bundle, check_par_line, \
    filtration_degree, tensor_par
from .root_stack import LineObject, StackBundle, check_line_object, \
    normalize, pushforward_twisted_degree, tensor_stack


@dataclass(frozen=True)
class OrderVector:
    """Vanishing orders of one object of the coend diagram.

    ``orders[i]`` is the order in the local root coordinate at marked point
    ``i``, relative to the generator of the ambient pullback; ``offset`` is
    the shared generic degree (the pullback part, constant over the diagram).
    """

    orders: tuple[int, ...]
    offset: int


def to_parabolic(cfg: OrbiConfig, obj):
    """Translate a bundle on the stack into its parabolic presentation."""
    if isinstance(obj, StackBundle):
        return ParBundle(tuple(to_parabolic(cfg, K) for K in obj.summands))
    K = obj
    check_line_object(cfg, K)
    r = cfg.root_index
    L = ParLine(K.d, tuple(Fraction(x, r) for x in K.res))
    # the defining property, checked over one full period
    for l in range(r):
        got = filtration_degree(cfg, L, Fraction(l, r))
        want = pushforward_twisted_degree(cfg, K, l)
        if got != want:
            raise VerificationError(
                f"filtration/pushforward mismatch at l={l}: {got} != {want}")
    return L


def to_stack(cfg: OrbiConfig, obj):
    """Translate a parabolic bundle into its stack presentation."""
    if isinstance(obj, ParLine):
        check_par_line(cfg, obj)
        r = cfg.root_index
        return LineObject(obj.d, tuple(int(w * r) for w in obj.weights))
    E = as_par_bundle(obj)
    return StackBundle(tuple(to_stack(cfg, L) for L in E.summands))


def coend_term(cfg: OrbiConfig, L: ParLine, l: int) -> OrderVector:
    """Orders of the l-th diagram object inside the common ambient bundle.

    The object is the l-th root power tensored with the pullback of the
    filtration step at l/r; at point i that subsheaf has order
    ``-l - r*floor(alpha_i - l/r)`` relative to the pullback generator.
    """
    check_par_line(cfg, L)
    r = cfg.root_index
    orders = tuple(-l - r * math.floor(w - Fraction(l, r)) for w in L.weights)
    return OrderVector(orders, L.d)


def coend_evaluate(cfg: OrbiConfig, L: ParLine) -> LineObject:
    """Evaluate the inverse functor on one line as a colimit of subsheaves.

    All diagram maps are multiplications by powers of the canonical sections,
    so they are isomorphisms away from the marked points and the colimit is
    the subsheaf sum: per point, the minimum vanishing order over one period
    of the index lattice.
    """
    terms = [coend_term(cfg, L, l) for l in range(cfg.root_index)]
    offsets = {t.offset for t in terms}
    if len(offsets) != 1:
        raise VerificationError("coend diagram has drifting generic degree")
    mins = [min(t.orders[i] for t in terms) for i in range(cfg.num_points)]
    return normalize(cfg, L.d, [-o for o in mins])


def tensor_compat_check(cfg: OrbiConfig, A, B) -> bool:
    """Whether translation to the stack intertwines the tensor products."""
    lhs = to_stack(cfg, tensor_par(cfg, A, B))
    rhs = tensor_stack(cfg, to_stack(cfg, A), to_stack(cfg, B))
    return lhs == rhs
